#include "thetalab/claims.hpp"

#include <algorithm>
#include <cstdio>

#include "thetalab/errors.hpp"

namespace thetalab {

void ClaimReport::add(std::string name, std::string expected, std::string actual) {
  const bool ok = expected == actual;
  claims_.push_back({std::move(name), std::move(expected), std::move(actual), ok});
}

void ClaimReport::add(std::string name, long long expected, long long actual) {
  add(std::move(name), std::to_string(expected), std::to_string(actual));
}

void ClaimReport::add_check(std::string name, bool ok, std::string detail) {
  claims_.push_back({std::move(name), "true", ok ? "true" : (detail.empty() ? "false" : detail), ok});
}

void ClaimReport::add_below(std::string name, double value, double limit) {
  char v[32], l[32];
  std::snprintf(v, sizeof v, "%.3e", value);
  std::snprintf(l, sizeof l, "< %.3e", limit);
  claims_.push_back({std::move(name), l, v, value < limit});
}

void ClaimReport::append(const ClaimReport& other) {
  claims_.insert(claims_.end(), other.claims_.begin(), other.claims_.end());
}

bool ClaimReport::all_passed() const noexcept { return failures() == 0; }

std::size_t ClaimReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(claims_.begin(), claims_.end(), [](const Claim& c) { return !c.passed; }));
}

void ClaimReport::require() const {
  for (const auto& c : claims_)
    if (!c.passed) throw VerificationError(c.name, "expected " + c.expected + ", got " + c.actual);
}

nlohmann::json ClaimReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : claims_)
    arr.push_back({{"claim", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"status", c.passed ? "PASS" : "FAIL"}});
  return arr;
}

}  // namespace thetalab
