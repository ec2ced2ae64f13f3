#include "thetalab/bounds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "thetalab/errors.hpp"

namespace thetalab {

namespace {

long long checked_pow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<long long>::max() / 4 / base) throw InputError("bound value exceeds 64-bit range");
    r *= base;
  }
  return r;
}

void check_args(int g, int n) {
  if (g < 1) throw InputError("genus must be >= 1");
  if (n < 2) throw InputError("level must be >= 2");
  checked_pow(n, 2 * g);
  checked_pow(7, g);
}

BoundRow row(std::string name, std::string source, BoundStatus status, std::string condition, long long value) {
  return {std::move(name), std::move(source), status, std::move(condition), true, std::max(0LL, value), false};
}

}  // namespace

const char* to_string(BoundStatus s) noexcept {
  switch (s) {
    case BoundStatus::theorem: return "theorem";
    case BoundStatus::conjecture: return "conjecture";
    case BoundStatus::remark: return "remark";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::satisfied: return "SATISFIED";
    case Verdict::violated: return "VIOLATED";
    case Verdict::not_applicable: return "NOT-APPLICABLE";
  }
  return "?";
}

std::vector<BoundRow> evaluate_bounds(int g, int n, const BoundContext& ctx) {
  check_args(g, n);
  const long long total = checked_pow(n, 2 * g);
  const long long ng = checked_pow(n, g);
  const long long p4 = checked_pow(4, g), p3 = checked_pow(3, g), p2 = checked_pow(2, g);
  const bool decomposed = ctx.blocks && ctx.blocks->size() > 1;
  std::vector<BoundRow> rows;

  if (n % 2 == 0) {
    const long long m = n / 2;
    rows.push_back(row("sharp-2torsion", "translates of 2y against the level-2 basis", BoundStatus::theorem,
                       "n even", checked_pow(m, 2 * g) * (p4 - p3)));
  }
  if (n == 2) {
    rows.push_back(row("theta-group", "theta-group representation", BoundStatus::theorem, "n = 2",
                       p4 - g * (p2 / 2) - p2));
    // floor(4^g - (7^g - 1)/(3^g - 1))
    const long long num = checked_pow(7, g) - 1, den = p3 - 1;
    BoundRow ratio = row("eigenspace-ratio", "surjective multiplication of symmetric sections",
                         BoundStatus::theorem, "n = 2, theta divisor irreducible", 0);
    ratio.value = p4 - (num + den - 1) / den;
    ratio.floored = num % den != 0;
    ratio.applicable = !decomposed;
    rows.push_back(ratio);
    rows.push_back(row("kummer-quadric", "no rank-2 quadric contains the Kummer image", BoundStatus::theorem,
                       "n = 2", p4 - 2 * p2 + 1));
    rows.push_back(row("classical", "earlier general bound", BoundStatus::theorem, "n = 2", p4 - p2));
    BoundRow simple = row("simple-remark", "symplectic action on the trivial-character part",
                          BoundStatus::remark, "n = 2, asserted simple", p4 - (g + 1) * p2);
    simple.applicable = ctx.simple;
    rows.push_back(simple);
  } else {
    rows.push_back(row("theta-group", "theta-group representation", BoundStatus::theorem, "n >= 3",
                       total - (g + 1) * ng));
  }
  if (ctx.blocks) {
    const int sum = std::accumulate(ctx.blocks->begin(), ctx.blocks->end(), 0);
    if (sum != g) throw InputError("block dimensions must add up to g");
    rows.push_back(row("decomposable", "product of the factor counts", BoundStatus::theorem,
                       "product decomposition given", decomposable_bound(*ctx.blocks, n)));
  }
  rows.push_back(row("product-conjecture", "expected extremal case: products of elliptic curves",
                     BoundStatus::conjecture, "all n", total - checked_pow(static_cast<long long>(n) * n - 1, g)));

  std::stable_sort(rows.begin(), rows.end(), [](const BoundRow& a, const BoundRow& b) {
    return a.value != b.value ? a.value < b.value : a.name < b.name;
  });
  return rows;
}

long long decomposable_bound(const std::vector<int>& blocks, int n) {
  if (blocks.empty()) throw InputError("blocks must be nonempty");
  int g = 0;
  for (int b : blocks) {
    if (b < 1) throw InputError("block dimensions must be >= 1");
    g += b;
  }
  check_args(g, n);
  long long prod = 1;
  if (n == 2) {
    // 2^g prod (b_i/2 + 1) = prod 2^{b_i - 1}(b_i + 2)
    for (int b : blocks) prod *= checked_pow(2, b - 1) * (b + 2);
    return checked_pow(4, g) - prod;
  }
  for (int b : blocks) prod *= b + 1;
  return checked_pow(n, 2 * g) - checked_pow(n, g) * prod;
}

std::pair<long long, long long> eigenspace_dims(int g, int n) {
  if (g < 1 || n < 1) throw InputError("eigenspace_dims needs g >= 1, n >= 1");
  const long long ng = checked_pow(n, g), half = checked_pow(2, g - 1);
  return {half * (ng + 1), half * (ng - 1)};
}

std::vector<ComparisonRow> compare(long long theta_n, const std::vector<BoundRow>& rows) {
  std::vector<ComparisonRow> out;
  for (const auto& r : rows) {
    Verdict v = Verdict::not_applicable;
    if (r.applicable) v = theta_n <= r.value ? Verdict::satisfied : Verdict::violated;
    out.push_back({r, v});
  }
  return out;
}

void require_no_theorem_violation(const std::vector<ComparisonRow>& rows) {
  for (const auto& r : rows)
    if (r.verdict == Verdict::violated && r.bound.status == BoundStatus::theorem)
      throw VerificationError("bound " + r.bound.name, "computed count exceeds " + std::to_string(r.bound.value));
}

nlohmann::json to_json(const BoundRow& r) {
  return {{"name", r.name},        {"source", r.source},         {"status", to_string(r.status)},
          {"condition", r.condition}, {"applicable", r.applicable}, {"value", r.value},
          {"floored", r.floored}};
}

nlohmann::json to_json(const ComparisonRow& r) {
  auto j = to_json(r.bound);
  j["verdict"] = to_string(r.verdict);
  return j;
}

}  // namespace thetalab
