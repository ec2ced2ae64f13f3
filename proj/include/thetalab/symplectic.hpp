#pragma once

// Sp(2g, F2) acting on half-integer theta characteristics.

#include <cstdint>
#include <string>
#include <vector>

#include "thetalab/characteristic.hpp"

namespace thetalab {

// A 2g x 2g matrix over F2 with blocks [[A, B], [C, D]], validated as
// symplectic on construction.
class SymplecticMap {
 public:
  // Row-major entries of the full 2g x 2g matrix (reduced mod 2).
  SymplecticMap(int g, std::vector<std::uint8_t> entries);

  static SymplecticMap identity(int g);

  int genus() const noexcept { return g_; }
  int entry(int row, int col) const { return entries_[row * 2 * g_ + col]; }

  // Block accessors, i, j in [0, g).
  int A(int i, int j) const { return entry(i, j); }
  int B(int i, int j) const { return entry(i, g_ + j); }
  int C(int i, int j) const { return entry(g_ + i, j); }
  int D(int i, int j) const { return entry(g_ + i, g_ + j); }

  SymplecticMap operator*(const SymplecticMap& rhs) const;

  // Packs the matrix into an integer key (2g <= 8 required).
  std::uint64_t key() const;

  friend bool operator==(const SymplecticMap&, const SymplecticMap&) = default;

 private:
  int g_;
  std::vector<std::uint8_t> entries_;
};

// True iff A^t D + C^t B = I and A^t C, B^t D are symmetric (all mod 2).
bool is_symplectic(int g, const std::vector<std::uint8_t>& entries);

// gamma . (x; y) = (D x + C y + diag(C D^t); B x + A y + diag(A B^t)) mod 2.
F2Vector act(const SymplecticMap& gamma, const F2Vector& m);
Characteristic act(const SymplecticMap& gamma, const Characteristic& c);

// Symmetric translations [[I,S],[0,I]], Levi transvections
// [[T,0],[0,T^-t]] and the swap [[0,I],[I,0]]; they generate Sp(2g, F2).
// Supported for g in {1, 2, 3}.
std::vector<SymplecticMap> standard_generators(int g);

struct Orbit {
  std::vector<std::string> members;  // labels, in discovery order sorted
  std::string parity;                // "even" / "odd"
};

struct OrbitReport {
  int g = 0;
  int tuples = 1;
  std::vector<Orbit> orbits;
  int even_orbit_count = 0;
  int odd_orbit_count = 0;
  long long even_class_size = 0;  // points (or ordered pairs) of even parity
  long long odd_class_size = 0;
  bool even_single_orbit() const { return even_orbit_count == 1; }
  bool odd_single_orbit() const { return odd_orbit_count == 1; }
};

// Orbits of the group generated by standard_generators(g) on single
// characteristics (tuples = 1) or on ordered pairs of distinct same-parity
// characteristics (tuples = 2).  Closure over generators only.
OrbitReport orbits(int g, int tuples);

// The affine action restricted to the even characteristics K_g^+, as a
// permutation group on their indices (canonical order).  Enumerates the whole
// group once and keeps the data needed for canonical forms of point subsets:
// the pointwise stabilizer of the two highest points and a transversal
// sending each ordered pair onto them.
class EvenPointGroup {
 public:
  explicit EvenPointGroup(int g);

  int genus() const noexcept { return g_; }
  int degree() const noexcept { return degree_; }
  std::uint64_t order() const noexcept { return order_; }

  // Generators as permutations of [0, degree).
  const std::vector<std::vector<std::uint8_t>>& generator_permutations() const { return gens_; }

  static std::uint64_t apply(const std::vector<std::uint8_t>& perm, std::uint64_t mask);

  // Canonical representative of the orbit of `mask`: the largest image among
  // those sending a best-ranked ordered pair of mask points onto the two top
  // points.  Pairs are ranked by invariants of the triple parities
  // (x + y + z odd or not), so equal orbits give equal results.
  std::uint64_t canonical(std::uint64_t mask) const;

  // Largest image over every group element (kept for g <= 2 only); a second,
  // independent orbit invariant for testing canonical().
  std::uint64_t canonical_bruteforce(std::uint64_t mask) const;

 private:
  std::uint64_t apply_stabilizer(std::size_t h, std::uint64_t mask) const;

  int g_;
  int degree_;
  std::uint64_t order_ = 0;
  std::vector<std::vector<std::uint8_t>> gens_;
  std::vector<std::vector<std::uint8_t>> stabilizer_;   // fixes degree-1, degree-2
  std::vector<std::vector<std::uint8_t>> transversal_;  // [x*degree+y]: x->deg-1, y->deg-2
  std::vector<std::uint64_t> stabilizer_tables_;        // per element, per byte chunk
  int chunks_ = 0;
  std::vector<std::uint64_t> odd_third_;  // [x*degree+y]: points z with x+y+z odd
  std::vector<std::vector<std::uint8_t>> all_;          // kept only for small groups
};

}  // namespace thetalab
