#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace thetalab {

struct Claim {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

// An ordered list of checked claims.
class ClaimReport {
 public:
  void add(std::string name, std::string expected, std::string actual);
  void add(std::string name, long long expected, long long actual);
  void add_check(std::string name, bool ok, std::string detail = {});
  // Passes iff value < limit; both recorded in scientific notation.
  void add_below(std::string name, double value, double limit);
  void append(const ClaimReport& other);

  const std::vector<Claim>& claims() const noexcept { return claims_; }
  bool all_passed() const noexcept;
  std::size_t failures() const noexcept;

  // Throws VerificationError naming the first failed claim.
  void require() const;

  nlohmann::json to_json() const;

 private:
  std::vector<Claim> claims_;
};

}  // namespace thetalab
