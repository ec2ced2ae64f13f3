#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "thetalab/characteristic.hpp"
#include "thetalab/errors.hpp"
#include "thetalab/symplectic.hpp"

using namespace thetalab;

namespace {

using Entries = std::vector<std::uint8_t>;

// M^t J M = J over F2, J = [[0, I], [I, 0]].
bool preserves_form(int g, const Entries& m) {
  const int n = 2 * g;
  auto j = [g](int r, int c) { return (r < g && c == r + g) || (r >= g && c == r - g) ? 1 : 0; };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      int s = 0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s ^= m[k * n + r] & j(k, l) & m[l * n + c];
      if (s != j(r, c)) return false;
    }
  return true;
}

// Every element of Sp(2g, F2) by testing all 2g x 2g binary matrices.
std::vector<Entries> whole_group(int g) {
  const int n = 2 * g;
  std::vector<Entries> out;
  for (std::uint32_t bits = 0; bits < (1U << (n * n)); ++bits) {
    Entries m(n * n);
    for (int i = 0; i < n * n; ++i) m[i] = (bits >> i) & 1U;
    if (preserves_form(g, m)) out.push_back(m);
  }
  return out;
}

// (x; y) -> (D x + C y + diag(C D^t); B x + A y + diag(A B^t)), written out
// from the blocks directly.
std::uint32_t act_code(int g, const Entries& m, std::uint32_t code) {
  const int n = 2 * g;
  auto e = [&](int r, int c) { return m[r * n + c]; };
  std::vector<int> x(g), y(g);
  for (int i = 0; i < g; ++i) {
    x[i] = (code >> (n - 1 - i)) & 1U;
    y[i] = (code >> (g - 1 - i)) & 1U;
  }
  std::uint32_t out = 0;
  for (int i = 0; i < g; ++i) {
    int nx = 0, ny = 0;
    for (int k = 0; k < g; ++k) {
      nx ^= (e(g + i, g + k) & x[k]) ^ (e(g + i, k) & y[k]) ^ (e(g + i, k) & e(g + i, g + k));
      ny ^= (e(i, g + k) & x[k]) ^ (e(i, k) & y[k]) ^ (e(i, k) & e(i, g + k));
    }
    out |= static_cast<std::uint32_t>(nx) << (n - 1 - i);
    out |= static_cast<std::uint32_t>(ny) << (g - 1 - i);
  }
  return out;
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

TEST_CASE("enumeration order and counts") {
  CHECK(enumerate(2, 2).size() == 16);
  CHECK(enumerate(3, 2).size() == 64);
  CHECK(enumerate(2, 3).size() == 81);
  const auto all = enumerate(2, 3);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].canonical_index() == i);
    CHECK(Characteristic::from_index(2, 3, i) == all[i]);
  }
  CHECK(all[1].b() == std::vector<int>{0, 1});
  CHECK(all[3].b() == std::vector<int>{1, 0});
  CHECK(Characteristic(2, 2, {0, 3}, {-1, 0}).a() == std::vector<int>{0, 1});
  CHECK(Characteristic(2, 2, {0, 3}, {-1, 0}).b() == std::vector<int>{1, 0});
  CHECK_THROWS_AS(Characteristic(2, 2, {0}, {0, 0}), InputError);
}

TEST_CASE("parity counts") {
  CHECK(count_parity(1) == ParityCounts{3, 1});
  CHECK(count_parity(2) == ParityCounts{10, 6});
  CHECK(count_parity(3) == ParityCounts{36, 28});
  for (int g = 1; g <= 4; ++g) CHECK(count_parity(g) == count_parity_enumerated(g));
  CHECK(parity(Characteristic(1, 2, {1}, {1})) == Parity::odd);
  CHECK(parity(Characteristic(2, 2, {1, 1}, {1, 1})) == Parity::even);
  CHECK_THROWS_AS(parity(Characteristic(1, 3, {1}, {1})), InputError);
}

TEST_CASE("F2 structure") {
  const int g = 2;
  CHECK(isotropic_vectors(g).size() == 10);
  CHECK(anisotropic_vectors(g).size() == 6);
  const auto order = pairing_order(g);
  CHECK(order.size() == 16);
  for (int i = 0; i < 10; ++i) CHECK(quadratic_class(order[i]) == QuadraticClass::isotropic);
  for (std::uint32_t a = 0; a < 16; ++a)
    for (std::uint32_t b = 0; b < 16; ++b) {
      const F2Vector x(g, a), y(g, b);
      int expected = 0;
      for (int i = 0; i < g; ++i) expected ^= (x.a(i) & y.b(i)) ^ (y.a(i) & x.b(i));
      CHECK(symplectic_pairing(x, y) == expected);
      CHECK(symplectic_pairing(x, y) == symplectic_pairing(y, x));
    }
  for (const auto& c : enumerate(g, 2)) CHECK(F2Vector::from_characteristic(c).to_characteristic() == c);
}

TEST_CASE("generators are symplectic and act as the block formula") {
  for (int g = 1; g <= 3; ++g) {
    const auto gens = standard_generators(g);
    CHECK(!gens.empty());
    for (const auto& s : gens) {
      Entries e;
      for (int r = 0; r < 2 * g; ++r)
        for (int c = 0; c < 2 * g; ++c) e.push_back(static_cast<std::uint8_t>(s.entry(r, c)));
      CHECK(preserves_form(g, e));
      for (std::uint32_t code = 0; code < (1U << (2 * g)); ++code)
        CHECK(act(s, F2Vector(g, code)).code() == act_code(g, e, code));
    }
  }
  CHECK_THROWS_AS(SymplecticMap(1, {1, 1, 1, 1}), InputError);
}

TEST_CASE("orbits against the whole group at g = 2") {
  const int g = 2;
  const auto group = whole_group(g);
  CHECK(group.size() == 720);

  // Oracle partitions: union of every element's images.
  std::vector<int> points(16);
  std::iota(points.begin(), points.end(), 0);
  std::vector<int> pairs(256);
  std::iota(pairs.begin(), pairs.end(), 0);
  for (const auto& m : group)
    for (std::uint32_t p = 0; p < 16; ++p) {
      points[find(points, static_cast<int>(p))] = find(points, static_cast<int>(act_code(g, m, p)));
      for (std::uint32_t q = 0; q < 16; ++q) {
        const int from = static_cast<int>(p * 16 + q);
        const int to = static_cast<int>(act_code(g, m, p) * 16 + act_code(g, m, q));
        pairs[find(pairs, from)] = find(pairs, to);
      }
    }
  std::map<int, int> point_sizes;
  for (int p = 0; p < 16; ++p) point_sizes[find(points, p)]++;
  std::multiset<int> sizes;
  for (const auto& [root, size] : point_sizes) sizes.insert(size);
  CHECK(sizes == std::multiset<int>{6, 10});

  std::map<int, int> pair_sizes;
  for (std::uint32_t p = 0; p < 16; ++p)
    for (std::uint32_t q = 0; q < 16; ++q)
      if (p != q && quadratic_class(F2Vector(g, p)) == quadratic_class(F2Vector(g, q)))
        pair_sizes[find(pairs, static_cast<int>(p * 16 + q))]++;
  sizes.clear();
  for (const auto& [root, size] : pair_sizes) sizes.insert(size);
  CHECK(sizes == std::multiset<int>{30, 90});

  const auto single = orbits(g, 1);
  CHECK(single.even_single_orbit());
  CHECK(single.odd_single_orbit());
  CHECK(single.even_class_size == 10);
  CHECK(single.odd_class_size == 6);
  const auto doubled = orbits(g, 2);
  CHECK(doubled.even_single_orbit());
  CHECK(doubled.odd_single_orbit());
  CHECK(doubled.even_class_size == 90);
  CHECK(doubled.odd_class_size == 30);
}

TEST_CASE("orbit examples") {
  const auto g1 = orbits(1, 1);
  CHECK(g1.orbits.size() == 2);
  CHECK(g1.even_class_size == 3);
  CHECK(g1.odd_class_size == 1);
  const auto g3 = orbits(3, 1);
  CHECK(g3.even_single_orbit());
  CHECK(g3.odd_single_orbit());
  CHECK(g3.even_class_size == 36);
  CHECK(g3.odd_class_size == 28);
  const auto g3_pairs = orbits(3, 2);
  CHECK(g3_pairs.even_single_orbit());
  CHECK(g3_pairs.odd_single_orbit());
  CHECK_THROWS_AS(orbits(4, 1), InputError);
  CHECK_THROWS_AS(orbits(2, 3), InputError);
}

TEST_CASE("even-point group") {
  const EvenPointGroup g2(2);
  CHECK(g2.degree() == 10);
  CHECK(g2.order() == 720);

  // canonical() and the brute-force maximum induce the same partition of all 2^10 masks.
  std::map<std::uint64_t, std::uint64_t> fast_to_brute, brute_to_fast;
  for (std::uint64_t m = 0; m < 1024; ++m) {
    const auto fast = g2.canonical(m), brute = g2.canonical_bruteforce(m);
    CHECK(std::popcount(fast) == std::popcount(m));
    auto [it, fresh] = fast_to_brute.emplace(fast, brute);
    if (!fresh) CHECK(it->second == brute);
    auto [jt, fresh2] = brute_to_fast.emplace(brute, fast);
    if (!fresh2) CHECK(jt->second == fast);
  }
  CHECK(fast_to_brute.size() == brute_to_fast.size());

  const EvenPointGroup g3(3);
  CHECK(g3.degree() == 36);
  CHECK(g3.order() == 1451520);
  std::mt19937_64 rng(11);
  const auto& gens = g3.generator_permutations();
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t mask = rng() & ((1ULL << 36) - 1);
    if (trial % 2) mask &= rng();  // sparser masks too
    std::uint64_t moved = mask;
    for (int step = 0; step < 12; ++step) moved = EvenPointGroup::apply(gens[rng() % gens.size()], moved);
    CHECK(g3.canonical(moved) == g3.canonical(mask));
  }
}
