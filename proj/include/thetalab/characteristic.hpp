#pragma once

// Theta characteristics and the F2 structure on half-integer characteristics.
//
// A level-n characteristic is a pair of integer vectors (a, b) with entries in
// [0, n), standing for delta = a/n and epsilon = b/n modulo Z^g.  The
// canonical order everywhere in the library is lexicographic on the
// concatenation a||b with a_1 most significant.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace thetalab {

class Characteristic {
 public:
  Characteristic(int g, int n, std::vector<int> a, std::vector<int> b);

  // Inverse of canonical_index().
  static Characteristic from_index(int g, int n, std::size_t index);

  int genus() const noexcept { return g_; }
  int level() const noexcept { return n_; }
  const std::vector<int>& a() const noexcept { return a_; }
  const std::vector<int>& b() const noexcept { return b_; }

  double delta(int i) const { return static_cast<double>(a_[i]) / n_; }
  double epsilon(int i) const { return static_cast<double>(b_[i]) / n_; }

  // Position of this characteristic in enumerate(g, n).
  std::size_t canonical_index() const noexcept;

  // "[a1 a2;b1 b2]/n"
  std::string label() const;

  friend bool operator==(const Characteristic&, const Characteristic&) = default;

 private:
  int g_;
  int n_;
  std::vector<int> a_;
  std::vector<int> b_;
};

// All n^{2g} characteristics in canonical order.
std::vector<Characteristic> enumerate(int g, int n);

enum class Parity { even, odd };

const char* to_string(Parity p) noexcept;

// Parity of a half-integer characteristic: odd iff sum a_i b_i is odd.
// Throws InputError for n != 2.
Parity parity(const Characteristic& c);

struct ParityCounts {
  long long even = 0;
  long long odd = 0;
  friend bool operator==(const ParityCounts&, const ParityCounts&) = default;
};

// Closed form (2^{g-1}(2^g+1), 2^{g-1}(2^g-1)).
ParityCounts count_parity(int g);

// Brute-force tally over enumerate(g, 2).
ParityCounts count_parity_enumerated(int g);

// A point of F_2^{2g}.  The packed code reads x_1 .. x_{2g} (a then b) as a
// binary number with x_1 most significant, so numeric order on codes is the
// canonical characteristic order.
class F2Vector {
 public:
  F2Vector(int g, std::uint32_t code);

  static F2Vector from_characteristic(const Characteristic& c);
  static F2Vector from_bits(int g, const std::vector<int>& a, const std::vector<int>& b);

  int genus() const noexcept { return g_; }
  std::uint32_t code() const noexcept { return code_; }

  int a(int i) const noexcept { return static_cast<int>((code_ >> (2 * g_ - 1 - i)) & 1U); }
  int b(int i) const noexcept { return static_cast<int>((code_ >> (g_ - 1 - i)) & 1U); }

  Characteristic to_characteristic() const;
  std::string label() const;

  F2Vector operator+(const F2Vector& other) const;

  friend bool operator==(const F2Vector&, const F2Vector&) = default;
  friend auto operator<=>(const F2Vector& x, const F2Vector& y) { return x.code_ <=> y.code_; }

 private:
  int g_;
  std::uint32_t code_;
};

// sum_i (m_i n_{g+i} + n_i m_{g+i}) mod 2.
int symplectic_pairing(const F2Vector& m, const F2Vector& n);

enum class QuadraticClass { isotropic, anisotropic };

// Class of m under <x,x> = x_1 x_{g+1} + ... + x_g x_{2g}.
QuadraticClass quadratic_class(const F2Vector& m);

// K_g^+ and K_g^- in canonical order.
std::vector<F2Vector> isotropic_vectors(int g);
std::vector<F2Vector> anisotropic_vectors(int g);

// K_g^+ followed by K_g^-; the row/column order of the pairing matrices.
std::vector<F2Vector> pairing_order(int g);

}  // namespace thetalab
