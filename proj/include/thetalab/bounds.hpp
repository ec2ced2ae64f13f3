#pragma once

// Closed-form upper bounds on Theta(n), the number of n-torsion points on a
// theta divisor, and their comparison with computed counts.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace thetalab {

enum class BoundStatus { theorem, conjecture, remark };
enum class Verdict { satisfied, violated, not_applicable };

const char* to_string(BoundStatus s) noexcept;
const char* to_string(Verdict v) noexcept;

struct BoundRow {
  std::string name;
  std::string source;     // the argument the bound comes from
  BoundStatus status = BoundStatus::theorem;
  std::string condition;  // when the row applies, in words
  bool applicable = true;
  long long value = 0;
  bool floored = false;   // closed form was not an integer
};

// What is known about the abelian variety beyond (g, n).
struct BoundContext {
  std::optional<std::vector<int>> blocks;  // dimensions of a product decomposition
  bool simple = false;                     // user asserts simplicity
};

// Rows applicable to level n, sorted ascending by value (ties by name).
std::vector<BoundRow> evaluate_bounds(int g, int n, const BoundContext& ctx = {});

// Upper bound for a product of ppavs of dimensions `blocks`.
long long decomposable_bound(const std::vector<int>& blocks, int n);

// (2^{g-1}(n^g + 1), 2^{g-1}(n^g - 1)).
std::pair<long long, long long> eigenspace_dims(int g, int n);

struct ComparisonRow {
  BoundRow bound;
  Verdict verdict = Verdict::not_applicable;
};

std::vector<ComparisonRow> compare(long long theta_n, const std::vector<BoundRow>& rows);

// Throws VerificationError if a theorem row is violated.
void require_no_theorem_violation(const std::vector<ComparisonRow>& rows);

nlohmann::json to_json(const BoundRow& row);
nlohmann::json to_json(const ComparisonRow& row);

}  // namespace thetalab
