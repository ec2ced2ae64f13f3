#include <doctest.h>

#include <cmath>
#include <map>

#include "thetalab/bounds.hpp"
#include "thetalab/errors.hpp"

using namespace thetalab;

namespace {

std::map<std::string, BoundRow> by_name(const std::vector<BoundRow>& rows) {
  std::map<std::string, BoundRow> out;
  for (const auto& r : rows) out[r.name] = r;
  return out;
}

}  // namespace

TEST_CASE("level 2, genus 2") {
  const auto rows = by_name(evaluate_bounds(2, 2));
  CHECK(rows.at("sharp-2torsion").value == 7);
  CHECK(rows.at("theta-group").value == 8);
  CHECK(rows.at("kummer-quadric").value == 9);
  CHECK(rows.at("eigenspace-ratio").value == 10);
  CHECK(rows.at("classical").value == 12);
  CHECK(rows.at("simple-remark").value == 4);
  CHECK_FALSE(rows.at("simple-remark").applicable);
  CHECK(rows.at("simple-remark").status == BoundStatus::remark);
  CHECK(rows.at("product-conjecture").status == BoundStatus::conjecture);
  CHECK(rows.count("decomposable") == 0);
}

TEST_CASE("closed forms across genera") {
  for (int g = 1; g <= 8; ++g) {
    const long long p4 = 1LL << (2 * g), p2 = 1LL << g;
    long long p3 = 1, p7 = 1;
    for (int i = 0; i < g; ++i) {
      p3 *= 3;
      p7 *= 7;
    }
    const auto rows = by_name(evaluate_bounds(g, 2));
    CHECK(rows.at("sharp-2torsion").value == p4 - p3);
    CHECK(rows.at("theta-group").value == p4 - g * p2 / 2 - p2);
    CHECK(rows.at("kummer-quadric").value == p4 - 2 * p2 + 1);
    CHECK(rows.at("classical").value == p4 - p2);
    // floor(4^g - (7^g - 1)/(3^g - 1)) checked in floating point
    const double ratio = static_cast<double>(p4) - static_cast<double>(p7 - 1) / static_cast<double>(p3 - 1);
    CHECK(rows.at("eigenspace-ratio").value == static_cast<long long>(std::floor(ratio)));
    CHECK(rows.at("eigenspace-ratio").floored == ((p7 - 1) % (p3 - 1) != 0));
    CHECK(rows.at("product-conjecture").value == p4 - p3);
    for (const auto& [name, row] : rows) {
      CHECK(row.value >= 0);
      CHECK(row.value <= p4);
    }
    // The proved bounds sharpen one another in this order for g >= 2.
    if (g >= 2) {
      CHECK(rows.at("sharp-2torsion").value < rows.at("theta-group").value);
      CHECK(rows.at("theta-group").value < rows.at("classical").value);
    }
  }
  CHECK(by_name(evaluate_bounds(3, 2)).at("eigenspace-ratio").value == 50);
  CHECK(by_name(evaluate_bounds(3, 2)).at("eigenspace-ratio").floored);
}

TEST_CASE("rows are sorted ascending") {
  for (int n : {2, 3, 4, 6}) {
    const auto rows = evaluate_bounds(3, n, {std::vector<int>{1, 2}, true});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].value <= rows[i].value);
  }
}

TEST_CASE("higher levels") {
  const auto n3 = by_name(evaluate_bounds(2, 3));
  CHECK(n3.at("theta-group").value == 81 - 27);
  CHECK(n3.count("sharp-2torsion") == 0);
  CHECK(n3.at("product-conjecture").value == 81 - 64);
  const auto n4 = by_name(evaluate_bounds(2, 4));
  CHECK(n4.at("sharp-2torsion").value == 112);
  CHECK(n4.at("theta-group").value == 256 - 48);
  CHECK(n4.at("product-conjecture").value == 31);
}

TEST_CASE("decomposable") {
  CHECK(decomposable_bound({1, 1, 1}, 2) == 37);
  CHECK(decomposable_bound({2}, 3) == 54);
  CHECK(decomposable_bound({1, 1}, 2) == 7);
  CHECK(decomposable_bound({2}, 2) == 8);
  CHECK(decomposable_bound({1, 1}, 4) == 256 - 16 * 4);
  const auto rows = by_name(evaluate_bounds(3, 2, {std::vector<int>{1, 1, 1}, false}));
  CHECK(rows.at("decomposable").value == 37);
  CHECK_FALSE(rows.at("eigenspace-ratio").applicable);
  CHECK_THROWS_AS(evaluate_bounds(3, 2, {std::vector<int>{1, 1}, false}), InputError);
  CHECK_THROWS_AS(decomposable_bound({}, 2), InputError);
  CHECK_THROWS_AS(decomposable_bound({0, 2}, 2), InputError);
}

TEST_CASE("eigenspace dimensions") {
  CHECK(eigenspace_dims(1, 2) == std::pair<long long, long long>{3, 1});
  CHECK(eigenspace_dims(2, 2) == std::pair<long long, long long>{10, 6});
  CHECK(eigenspace_dims(2, 4) == std::pair<long long, long long>{34, 30});
  for (int g = 1; g <= 5; ++g)
    for (int n = 2; n <= 5; ++n) {
      const auto [plus, minus] = eigenspace_dims(g, n);
      long long total = 1;
      for (int i = 0; i < g; ++i) total *= n;
      CHECK(plus + minus == (1LL << g) * total);
      CHECK(plus - minus == 1LL << g);
    }
}

TEST_CASE("verdicts") {
  const auto rows = evaluate_bounds(2, 2);
  for (const auto& c : compare(6, rows)) {
    if (c.bound.applicable) CHECK(c.verdict == Verdict::satisfied);
    else CHECK(c.verdict == Verdict::not_applicable);
  }
  CHECK_NOTHROW(require_no_theorem_violation(compare(7, rows)));
  const auto over = compare(8, rows);
  bool conjecture_violated = false;
  for (const auto& c : over)
    if (c.bound.name == "product-conjecture") conjecture_violated = c.verdict == Verdict::violated;
  CHECK(conjecture_violated);
  CHECK_THROWS_AS(require_no_theorem_violation(over), VerificationError);
  CHECK(std::string(to_string(Verdict::not_applicable)) == "NOT-APPLICABLE");
  CHECK(to_json(over.front())["verdict"].is_string());
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(evaluate_bounds(0, 2), InputError);
  CHECK_THROWS_AS(evaluate_bounds(2, 1), InputError);
  CHECK_THROWS_AS(evaluate_bounds(40, 2), InputError);
}
