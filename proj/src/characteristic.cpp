#include "thetalab/characteristic.hpp"

#include <bit>
#include <sstream>

#include "thetalab/errors.hpp"

namespace thetalab {

namespace {

void check_genus_level(int g, int n) {
  if (g < 1) throw InputError("genus must be >= 1");
  if (n < 2) throw InputError("level must be >= 2");
}

int mod(int x, int n) {
  const int r = x % n;
  return r < 0 ? r + n : r;
}

}  // namespace

Characteristic::Characteristic(int g, int n, std::vector<int> a, std::vector<int> b)
    : g_(g), n_(n), a_(std::move(a)), b_(std::move(b)) {
  check_genus_level(g, n);
  if (static_cast<int>(a_.size()) != g || static_cast<int>(b_.size()) != g)
    throw InputError("characteristic vectors must have length g");
  for (auto& x : a_) x = mod(x, n);
  for (auto& x : b_) x = mod(x, n);
}

Characteristic Characteristic::from_index(int g, int n, std::size_t index) {
  check_genus_level(g, n);
  std::vector<int> digits(2 * g);
  for (int k = 2 * g - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(index % n);
    index /= n;
  }
  if (index != 0) throw InputError("characteristic index out of range");
  return Characteristic(g, n, std::vector<int>(digits.begin(), digits.begin() + g),
                        std::vector<int>(digits.begin() + g, digits.end()));
}

std::size_t Characteristic::canonical_index() const noexcept {
  std::size_t idx = 0;
  for (int x : a_) idx = idx * n_ + x;
  for (int x : b_) idx = idx * n_ + x;
  return idx;
}

std::string Characteristic::label() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < g_; ++i) os << (i ? " " : "") << a_[i];
  os << ';';
  for (int i = 0; i < g_; ++i) os << (i ? " " : "") << b_[i];
  os << "]/" << n_;
  return os.str();
}

std::vector<Characteristic> enumerate(int g, int n) {
  check_genus_level(g, n);
  std::size_t total = 1;
  for (int i = 0; i < 2 * g; ++i) total *= static_cast<std::size_t>(n);
  std::vector<Characteristic> out;
  out.reserve(total);
  for (std::size_t i = 0; i < total; ++i) out.push_back(Characteristic::from_index(g, n, i));
  return out;
}

const char* to_string(Parity p) noexcept { return p == Parity::even ? "even" : "odd"; }

Parity parity(const Characteristic& c) {
  if (c.level() != 2) throw InputError("parity is defined for half-integer characteristics only");
  int s = 0;
  for (int i = 0; i < c.genus(); ++i) s += c.a()[i] * c.b()[i];
  return (s & 1) ? Parity::odd : Parity::even;
}

ParityCounts count_parity(int g) {
  if (g < 1 || g > 30) throw InputError("genus out of range");
  const long long half = 1LL << (g - 1);
  const long long full = 1LL << g;
  return {half * (full + 1), half * (full - 1)};
}

ParityCounts count_parity_enumerated(int g) {
  ParityCounts counts;
  for (const auto& c : enumerate(g, 2)) (parity(c) == Parity::even ? counts.even : counts.odd)++;
  return counts;
}

F2Vector::F2Vector(int g, std::uint32_t code) : g_(g), code_(code) {
  if (g < 1 || g > 15) throw InputError("F2Vector genus out of range");
  if (code >= (1U << (2 * g))) throw InputError("F2Vector code out of range");
}

F2Vector F2Vector::from_characteristic(const Characteristic& c) {
  if (c.level() != 2) throw InputError("F2Vector requires a half-integer characteristic");
  return from_bits(c.genus(), c.a(), c.b());
}

F2Vector F2Vector::from_bits(int g, const std::vector<int>& a, const std::vector<int>& b) {
  if (static_cast<int>(a.size()) != g || static_cast<int>(b.size()) != g)
    throw InputError("F2Vector halves must have length g");
  std::uint32_t code = 0;
  for (int x : a) code = (code << 1) | static_cast<std::uint32_t>(x & 1);
  for (int x : b) code = (code << 1) | static_cast<std::uint32_t>(x & 1);
  return F2Vector(g, code);
}

Characteristic F2Vector::to_characteristic() const {
  std::vector<int> av(g_), bv(g_);
  for (int i = 0; i < g_; ++i) {
    av[i] = a(i);
    bv[i] = b(i);
  }
  return Characteristic(g_, 2, std::move(av), std::move(bv));
}

std::string F2Vector::label() const {
  std::string s;
  for (int i = 0; i < g_; ++i) s += static_cast<char>('0' + a(i));
  s += '|';
  for (int i = 0; i < g_; ++i) s += static_cast<char>('0' + b(i));
  return s;
}

F2Vector F2Vector::operator+(const F2Vector& other) const {
  if (other.g_ != g_) throw InputError("F2Vector genus mismatch");
  return F2Vector(g_, code_ ^ other.code_);
}

int symplectic_pairing(const F2Vector& m, const F2Vector& n) {
  if (m.genus() != n.genus()) throw InputError("symplectic_pairing: genus mismatch");
  const int g = m.genus();
  const std::uint32_t low = (1U << g) - 1;
  const std::uint32_t ma = m.code() >> g, mb = m.code() & low;
  const std::uint32_t na = n.code() >> g, nb = n.code() & low;
  return std::popcount((ma & nb) ^ (na & mb)) & 1;
}

QuadraticClass quadratic_class(const F2Vector& m) {
  const int g = m.genus();
  const std::uint32_t low = (1U << g) - 1;
  const int q = std::popcount((m.code() >> g) & (m.code() & low)) & 1;
  return q ? QuadraticClass::anisotropic : QuadraticClass::isotropic;
}

namespace {

std::vector<F2Vector> vectors_of_class(int g, QuadraticClass cls) {
  if (g < 1 || g > 15) throw InputError("genus out of range");
  std::vector<F2Vector> out;
  for (std::uint32_t code = 0; code < (1U << (2 * g)); ++code) {
    F2Vector v(g, code);
    if (quadratic_class(v) == cls) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<F2Vector> isotropic_vectors(int g) { return vectors_of_class(g, QuadraticClass::isotropic); }

std::vector<F2Vector> anisotropic_vectors(int g) {
  return vectors_of_class(g, QuadraticClass::anisotropic);
}

std::vector<F2Vector> pairing_order(int g) {
  auto order = isotropic_vectors(g);
  auto rest = anisotropic_vectors(g);
  order.insert(order.end(), rest.begin(), rest.end());
  return order;
}

}  // namespace thetalab
