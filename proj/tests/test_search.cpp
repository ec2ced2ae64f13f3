#include <doctest.h>

#include <bit>

#include "thetalab/errors.hpp"
#include "thetalab/pairing.hpp"
#include "thetalab/parallel.hpp"
#include "thetalab/search.hpp"

using namespace thetalab;

namespace {

// Minimum exact rank per order over all subsets of {0..size-1} up to max_order.
std::vector<int> brute_min_ranks(const IntMatrix& B, int max_order) {
  const int size = B.rows();
  std::vector<int> best(max_order + 1, size + 1);
  best[0] = 0;
  std::vector<int> pick;
  auto recurse = [&](auto&& self, int next) -> void {
    const int k = static_cast<int>(pick.size());
    if (k > 0) best[k] = std::min(best[k], exact_rank(B.principal(pick)));
    if (k == max_order) return;
    for (int i = next; i < size; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace

TEST_CASE("subset masks") {
  const SubsetMask m(2, 0x1ff);
  CHECK(m.order() == 9);
  CHECK(m.hex() == "0x1ff");
  CHECK(m.indices() == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK_THROWS_AS(SubsetMask(2, 1ULL << 10), InputError);
  CHECK_THROWS_AS(SubsetMask(4, 1), InputError);
  CHECK(principal_rank(build_B(2), m) == 5);
}

TEST_CASE("genus 2 exhaustive scan") {
  const SearchReport r = h0_exhaustive(2);
  REQUIRE(r.h0);
  CHECK(*r.h0 == 9);
  CHECK(r.exhaustive);
  CHECK(r.h0_lower == 9);
  CHECK(r.h0_upper == 9);
  CHECK(r.evaluations == 1024);
  CHECK(r.witnesses.size() == 10);
  for (const auto& w : r.witnesses) {
    CHECK(w.mask.order() == 9);
    CHECK(w.rank == 5);
  }
  CHECK(r.orders[8].min_rank == 5);
  for (int k = 0; k <= 3; ++k) CHECK(r.orders[k].min_rank == k);

  const auto brute = brute_min_ranks(build_B(2), 10);
  for (int k = 0; k <= 10; ++k) CHECK(r.orders[k].min_rank == brute[k]);

  std::uint64_t bk = 0;
  for (int i : bk_indices(2)) bk |= 1ULL << i;
  bool has_bk = false;
  for (const auto& w : r.witnesses) has_bk |= w.mask.bits() == bk;
  CHECK(has_bk);
}

TEST_CASE("serial and parallel scans agree") {
  for (int threads : {1, 3}) {
    set_thread_count(threads);
    CHECK(h0_exhaustive(2).to_json() == h0_exhaustive_serial(2).to_json());
    CHECK(h0_exhaustive(2, {true}).to_json() == h0_exhaustive_serial(2, {true}).to_json());
  }
  const SearchReport orbit = h0_exhaustive(2, {true});
  CHECK(*orbit.h0 == 9);
  CHECK(orbit.witnesses.size() == 1);
  CHECK_THROWS_AS(h0_exhaustive(3), InputError);
}

TEST_CASE("orbit levels match brute force") {
  // The scan stops after the first level holding a witness (order 9 at g = 2).
  const auto g2 = orbit_levels(2, 10);
  const auto brute2 = brute_min_ranks(build_B(2), 10);
  REQUIRE(g2.size() == 10);
  CHECK(g2[9].feasible);
  for (int k = 0; k <= 9; ++k) {
    CHECK(g2[k].min_rank == brute2[k]);
    CHECK(g2[k].exhaustive);
  }
  const auto g3 = orbit_levels(3, 4);
  const auto brute3 = brute_min_ranks(build_B(3), 4);
  const long long reps[] = {1, 1, 1, 2, 4};
  for (int k = 0; k <= 4; ++k) {
    CHECK(g3[k].min_rank == brute3[k]);
    CHECK(g3[k].subsets == reps[k]);
  }
}

TEST_CASE("genus 3 probe") {
  ProbeOptions opts;
  opts.budget = 30000;
  opts.seed = 5;
  opts.max_level = 6;
  const SearchReport a = h0_probe(3, opts);
  CHECK(a.h0_upper == 27);
  REQUIRE(!a.witnesses.empty());
  CHECK(a.witnesses.front().rank == 19);
  CHECK(a.witnesses.front().mask.order() == 27);
  CHECK(a.exhaustive_levels == 7);
  // Minimum rank 6 at order 6 rules out every order below 14.
  CHECK(a.h0_lower == 14);
  CHECK_FALSE(a.h0);
  CHECK(a.discoveries.empty());
  CHECK(a.restarts > 0);
  CHECK(a.evaluations <= opts.budget);
  CHECK(a.to_json()["finding"] == "no witness of order below 27 found within budget");

  set_thread_count(1);
  const auto serial = h0_probe(3, opts).to_json();
  set_thread_count(4);
  CHECK(h0_probe(3, opts).to_json() == serial);
  CHECK(a.to_json() == serial);

  opts.seed = 6;
  CHECK(h0_probe(3, opts).to_json()["seed"] == 6);
  CHECK_THROWS_AS(h0_probe(2, opts), InputError);
  opts.budget = -1;
  CHECK_THROWS_AS(h0_probe(3, opts), InputError);
}
