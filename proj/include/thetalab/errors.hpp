#pragma once

#include <stdexcept>
#include <string>

namespace thetalab {

// Malformed input: bad files, out-of-range parameters, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical decision (vanishing or rank) fell inside the refusal band.
class AmbiguityError : public std::runtime_error {
 public:
  AmbiguityError(const std::string& what, std::string subject, double relative)
      : std::runtime_error(what), subject_(std::move(subject)), relative_(relative) {}

  const std::string& subject() const noexcept { return subject_; }
  double relative() const noexcept { return relative_; }

 private:
  std::string subject_;
  double relative_;
};

// The theta series could not reach the requested tolerance within the radius cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact claim did not verify. Carries the claim name.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string claim, const std::string& detail)
      : std::runtime_error(claim + ": " + detail), claim_(std::move(claim)) {}

  const std::string& claim() const noexcept { return claim_; }

 private:
  std::string claim_;
};

}  // namespace thetalab
