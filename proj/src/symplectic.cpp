#include "thetalab/symplectic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <map>
#include <numeric>

#include "thetalab/errors.hpp"

namespace thetalab {

namespace {

using Entries = std::vector<std::uint8_t>;

int dim_of(int g) { return 2 * g; }

Entries multiply(int g, const Entries& x, const Entries& y) {
  const int n = dim_of(g);
  Entries out(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (x[i * n + k])
        for (int j = 0; j < n; ++j) out[i * n + j] ^= y[k * n + j];
  return out;
}

Entries block_matrix(int g, const Entries& a, const Entries& b, const Entries& c, const Entries& d) {
  const int n = dim_of(g);
  Entries out(n * n, 0);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      out[i * n + j] = a[i * g + j];
      out[i * n + g + j] = b[i * g + j];
      out[(g + i) * n + j] = c[i * g + j];
      out[(g + i) * n + g + j] = d[i * g + j];
    }
  return out;
}

Entries identity_block(int g) {
  Entries e(g * g, 0);
  for (int i = 0; i < g; ++i) e[i * g + i] = 1;
  return e;
}

void check_supported_genus(int g) {
  if (g < 1 || g > 3) throw InputError("symplectic group computations support g in {1, 2, 3}");
}

}  // namespace

bool is_symplectic(int g, const Entries& e) {
  const int n = dim_of(g);
  if (static_cast<int>(e.size()) != n * n) return false;
  auto at = [&](int r, int c) { return e[r * n + c] & 1; };
  // (X^t Y)_{ij} = sum_k X_{ki} Y_{kj}
  auto tprod = [&](int xr, int xc, int yr, int yc, int i, int j) {
    int s = 0;
    for (int k = 0; k < g; ++k) s ^= at(xr + k, xc + i) & at(yr + k, yc + j);
    return s;
  };
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const int ad = tprod(0, 0, g, g, i, j) ^ tprod(g, 0, 0, g, i, j);
      if (ad != (i == j ? 1 : 0)) return false;
      if (tprod(0, 0, g, 0, i, j) != tprod(0, 0, g, 0, j, i)) return false;
      if (tprod(0, g, g, g, i, j) != tprod(0, g, g, g, j, i)) return false;
    }
  return true;
}

SymplecticMap::SymplecticMap(int g, Entries entries) : g_(g), entries_(std::move(entries)) {
  if (g < 1 || g > 4) throw InputError("SymplecticMap genus out of range");
  for (auto& x : entries_) x &= 1;
  if (!is_symplectic(g, entries_)) throw InputError("matrix is not symplectic over F2");
}

SymplecticMap SymplecticMap::identity(int g) {
  const auto i = identity_block(g);
  const Entries z(g * g, 0);
  return SymplecticMap(g, block_matrix(g, i, z, z, i));
}

SymplecticMap SymplecticMap::operator*(const SymplecticMap& rhs) const {
  if (rhs.g_ != g_) throw InputError("SymplecticMap genus mismatch");
  return SymplecticMap(g_, multiply(g_, entries_, rhs.entries_));
}

std::uint64_t SymplecticMap::key() const {
  std::uint64_t k = 0;
  for (auto x : entries_) k = (k << 1) | x;
  return k;
}

F2Vector act(const SymplecticMap& gamma, const F2Vector& m) {
  const int g = gamma.genus();
  if (m.genus() != g) throw InputError("act: genus mismatch");
  std::vector<int> x(g), y(g);
  for (int i = 0; i < g; ++i) {
    int xi = 0, yi = 0, cd = 0, ab = 0;
    for (int j = 0; j < g; ++j) {
      xi ^= (gamma.D(i, j) & m.a(j)) ^ (gamma.C(i, j) & m.b(j));
      yi ^= (gamma.B(i, j) & m.a(j)) ^ (gamma.A(i, j) & m.b(j));
      cd ^= gamma.C(i, j) & gamma.D(i, j);
      ab ^= gamma.A(i, j) & gamma.B(i, j);
    }
    x[i] = xi ^ cd;
    y[i] = yi ^ ab;
  }
  return F2Vector::from_bits(g, x, y);
}

Characteristic act(const SymplecticMap& gamma, const Characteristic& c) {
  return act(gamma, F2Vector::from_characteristic(c)).to_characteristic();
}

std::vector<SymplecticMap> standard_generators(int g) {
  check_supported_genus(g);
  const auto id = identity_block(g);
  const Entries zero(g * g, 0);
  std::vector<SymplecticMap> gens;
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      Entries s(g * g, 0);
      s[i * g + j] = 1;
      s[j * g + i] = 1;
      gens.emplace_back(g, block_matrix(g, id, s, zero, id));
    }
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (i == j) continue;
      // T = I + E_ij is its own inverse over F2, so T^{-t} = I + E_ji.
      Entries t = id, tinv_t = id;
      t[i * g + j] = 1;
      tinv_t[j * g + i] = 1;
      gens.emplace_back(g, block_matrix(g, t, zero, zero, tinv_t));
    }
  gens.emplace_back(g, block_matrix(g, zero, id, id, zero));
  return gens;
}

OrbitReport orbits(int g, int tuples) {
  check_supported_genus(g);
  if (tuples != 1 && tuples != 2) throw InputError("tuples must be 1 or 2");
  const auto gens = standard_generators(g);
  const int points = 1 << (2 * g);

  // images[k][p]: generator k applied to point code p
  std::vector<std::vector<std::uint32_t>> images(gens.size(), std::vector<std::uint32_t>(points));
  std::vector<Parity> par(points);
  for (int p = 0; p < points; ++p) {
    const F2Vector v(g, static_cast<std::uint32_t>(p));
    par[p] = quadratic_class(v) == QuadraticClass::isotropic ? Parity::even : Parity::odd;
    for (std::size_t k = 0; k < gens.size(); ++k) images[k][p] = act(gens[k], v).code();
  }

  // Elements of the index set, encoded as a single integer.
  std::vector<std::uint32_t> elements;
  if (tuples == 1) {
    for (int p = 0; p < points; ++p) elements.push_back(static_cast<std::uint32_t>(p));
  } else {
    for (int p = 0; p < points; ++p)
      for (int q = 0; q < points; ++q)
        if (p != q && par[p] == par[q]) elements.push_back(static_cast<std::uint32_t>(p * points + q));
  }
  auto image = [&](std::size_t k, std::uint32_t e) -> std::uint32_t {
    if (tuples == 1) return images[k][e];
    return images[k][e / points] * points + images[k][e % points];
  };
  auto label = [&](std::uint32_t e) {
    if (tuples == 1) return F2Vector(g, e).label();
    return "(" + F2Vector(g, e / points).label() + "," + F2Vector(g, e % points).label() + ")";
  };
  auto parity_of = [&](std::uint32_t e) { return par[tuples == 1 ? e : e / points]; };

  OrbitReport report;
  report.g = g;
  report.tuples = tuples;
  for (auto e : elements) (parity_of(e) == Parity::even ? report.even_class_size : report.odd_class_size)++;

  std::map<std::uint32_t, bool> seen;
  for (auto e : elements) seen[e] = false;
  for (auto start : elements) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> members{start};
    seen[start] = true;
    std::deque<std::uint32_t> queue{start};
    while (!queue.empty()) {
      const auto cur = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const auto nxt = image(k, cur);
        auto it = seen.find(nxt);
        if (it == seen.end()) throw VerificationError("orbit closure", "action left the index set");
        if (!it->second) {
          it->second = true;
          members.push_back(nxt);
          queue.push_back(nxt);
        }
      }
    }
    std::sort(members.begin(), members.end());
    Orbit orbit;
    orbit.parity = to_string(parity_of(start));
    for (auto m : members) orbit.members.push_back(label(m));
    (parity_of(start) == Parity::even ? report.even_orbit_count : report.odd_orbit_count)++;
    report.orbits.push_back(std::move(orbit));
  }
  return report;
}

namespace {

// Open-addressing set of 64-bit keys (key ~0 is reserved).
class KeySet {
 public:
  explicit KeySet(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, kEmpty);
  }
  bool insert(std::uint64_t key) {
    if ((size_ + 1) * 2 > slots_.size()) grow();
    return place(slots_, key);
  }
  std::size_t size() const { return size_; }

 private:
  static constexpr std::uint64_t kEmpty = ~0ULL;
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
  }
  bool place(std::vector<std::uint64_t>& slots, std::uint64_t key) {
    const std::size_t mask = slots.size() - 1;
    for (std::size_t i = mix(key) & mask;; i = (i + 1) & mask) {
      if (slots[i] == key) return false;
      if (slots[i] == kEmpty) {
        slots[i] = key;
        if (&slots == &slots_) ++size_;
        return true;
      }
    }
  }
  void grow() {
    std::vector<std::uint64_t> bigger(slots_.size() * 2, kEmpty);
    for (auto k : slots_)
      if (k != kEmpty) place(bigger, k);
    slots_.swap(bigger);
  }
  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0;
};

// Compact F2 matrix for the enumeration: one byte per row.
struct RowMatrix {
  int n = 0;
  std::array<std::uint8_t, 8> rows{};

  static RowMatrix from(const SymplecticMap& s) {
    RowMatrix m;
    m.n = 2 * s.genus();
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j)
        if (s.entry(i, j)) m.rows[i] |= static_cast<std::uint8_t>(1U << j);
    return m;
  }
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i) k = (k << 8) | rows[i];
    return k;
  }
  static RowMatrix from_key(int n, std::uint64_t k) {
    RowMatrix m;
    m.n = n;
    for (int i = n - 1; i >= 0; --i) {
      m.rows[i] = static_cast<std::uint8_t>(k & 0xFF);
      k >>= 8;
    }
    return m;
  }
  RowMatrix operator*(const RowMatrix& y) const {
    RowMatrix out;
    out.n = n;
    for (int i = 0; i < n; ++i) {
      std::uint8_t r = 0;
      for (int k = 0; k < n; ++k)
        if ((rows[i] >> k) & 1U) r ^= y.rows[k];
      out.rows[i] = r;
    }
    return out;
  }
  int at(int i, int j) const { return (rows[i] >> j) & 1; }
};

// Affine action on a point code, same formula as act().
std::uint32_t act_rows(const RowMatrix& m, int g, std::uint32_t code) {
  auto xa = [&](int j) { return static_cast<int>((code >> (2 * g - 1 - j)) & 1U); };
  auto xb = [&](int j) { return static_cast<int>((code >> (g - 1 - j)) & 1U); };
  std::uint32_t out = 0;
  std::array<int, 4> x{}, y{};
  for (int i = 0; i < g; ++i) {
    int xi = 0, yi = 0, cd = 0, ab = 0;
    for (int j = 0; j < g; ++j) {
      const int A = m.at(i, j), B = m.at(i, g + j), C = m.at(g + i, j), D = m.at(g + i, g + j);
      xi ^= (D & xa(j)) ^ (C & xb(j));
      yi ^= (B & xa(j)) ^ (A & xb(j));
      cd ^= C & D;
      ab ^= A & B;
    }
    x[i] = xi ^ cd;
    y[i] = yi ^ ab;
  }
  for (int i = 0; i < g; ++i) out = (out << 1) | static_cast<std::uint32_t>(x[i]);
  for (int i = 0; i < g; ++i) out = (out << 1) | static_cast<std::uint32_t>(y[i]);
  return out;
}

}  // namespace

EvenPointGroup::EvenPointGroup(int g) : g_(g) {
  check_supported_genus(g);
  const auto evens = isotropic_vectors(g);
  degree_ = static_cast<int>(evens.size());
  if (degree_ < 2) throw InputError("EvenPointGroup needs at least two points");
  std::vector<int> index_of(1U << (2 * g), -1);
  for (int i = 0; i < degree_; ++i) index_of[evens[i].code()] = i;

  odd_third_.assign(static_cast<std::size_t>(degree_) * degree_, 0);
  for (int x = 0; x < degree_; ++x)
    for (int y = 0; y < degree_; ++y)
      for (int z = 0; z < degree_; ++z) {
        const F2Vector sum(g, evens[x].code() ^ evens[y].code() ^ evens[z].code());
        if (quadratic_class(sum) == QuadraticClass::anisotropic)
          odd_third_[static_cast<std::size_t>(x) * degree_ + y] |= 1ULL << z;
      }

  const auto gens = standard_generators(g);
  std::vector<RowMatrix> gen_rows;
  for (const auto& s : gens) gen_rows.push_back(RowMatrix::from(s));

  auto permutation_of = [&](const RowMatrix& m) {
    std::vector<std::uint8_t> perm(degree_);
    for (int i = 0; i < degree_; ++i) {
      const int j = index_of[act_rows(m, g, evens[i].code())];
      if (j < 0) throw VerificationError("even action", "image left K_g^+");
      perm[i] = static_cast<std::uint8_t>(j);
    }
    return perm;
  };
  for (const auto& m : gen_rows) gens_.push_back(permutation_of(m));

  const int top = degree_ - 1, next = degree_ - 2;
  const std::uint32_t top_code = evens[top].code(), next_code = evens[next].code();
  transversal_.assign(static_cast<std::size_t>(degree_) * degree_, {});
  const bool keep_all = g <= 2;

  const int n = 2 * g;
  KeySet seen(g == 3 ? 1500000 : 1024);
  std::vector<std::uint64_t> frontier{RowMatrix::from(SymplecticMap::identity(g)).key()};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next_frontier;
    for (auto key : frontier) {
      const auto m = RowMatrix::from_key(n, key);
      const int u = index_of[act_rows(m, g, top_code)];
      const int v = index_of[act_rows(m, g, next_code)];
      auto& slot = transversal_[static_cast<std::size_t>(u) * degree_ + v];
      if (u == top && v == next) stabilizer_.push_back(permutation_of(m));
      if (slot.empty()) {
        // m sends (top, next) to (u, v); its inverse sends (u, v) back.
        const auto perm = permutation_of(m);
        std::vector<std::uint8_t> inv(degree_);
        for (int i = 0; i < degree_; ++i) inv[perm[i]] = static_cast<std::uint8_t>(i);
        slot = std::move(inv);
      }
      if (keep_all) all_.push_back(permutation_of(m));
      for (const auto& gr : gen_rows) {
        const auto nk = (m * gr).key();
        if (seen.insert(nk)) next_frontier.push_back(nk);
      }
    }
    frontier.swap(next_frontier);
  }
  order_ = seen.size();

  chunks_ = (degree_ + 7) / 8;
  stabilizer_tables_.assign(stabilizer_.size() * chunks_ * 256, 0);
  for (std::size_t h = 0; h < stabilizer_.size(); ++h)
    for (int c = 0; c < chunks_; ++c)
      for (int byte = 0; byte < 256; ++byte) {
        std::uint64_t img = 0;
        for (int bit = 0; bit < 8; ++bit) {
          const int p = c * 8 + bit;
          if (p < degree_ && ((byte >> bit) & 1)) img |= 1ULL << stabilizer_[h][p];
        }
        stabilizer_tables_[(h * chunks_ + c) * 256 + byte] = img;
      }
}

std::uint64_t EvenPointGroup::apply(const std::vector<std::uint8_t>& perm, std::uint64_t mask) {
  std::uint64_t out = 0;
  while (mask) {
    const int p = std::countr_zero(mask);
    mask &= mask - 1;
    out |= 1ULL << perm[p];
  }
  return out;
}

std::uint64_t EvenPointGroup::apply_stabilizer(std::size_t h, std::uint64_t mask) const {
  std::uint64_t out = 0;
  const std::uint64_t* table = &stabilizer_tables_[h * chunks_ * 256];
  for (int c = 0; c < chunks_; ++c) out |= table[c * 256 + ((mask >> (8 * c)) & 0xFF)];
  return out;
}

std::uint64_t EvenPointGroup::canonical(std::uint64_t mask) const {
  const int k = std::popcount(mask);
  if (k == 0) return 0;
  if (k == 1) return 1ULL << (degree_ - 1);
  // Rank each ordered pair by (inv(x), inv(y), #z with x+y+z odd), where inv
  // sums the last count over the partners of a point.  These are invariants
  // of (mask, x, y) under the group, so only the best-ranked pairs need to be
  // carried to the top two points.
  std::array<int, 64> inv{};
  auto pair_count = [&](int x, int y) {
    return std::popcount(odd_third_[static_cast<std::size_t>(x) * degree_ + y] & mask);
  };
  for (std::uint64_t xs = mask; xs; xs &= xs - 1) {
    const int x = std::countr_zero(xs);
    for (std::uint64_t ys = mask; ys; ys &= ys - 1) inv[x] += pair_count(x, std::countr_zero(ys));
  }
  std::array<int, 3> best_key{-1, -1, -1};
  std::vector<std::pair<int, int>> pairs;
  for (std::uint64_t xs = mask; xs; xs &= xs - 1) {
    const int x = std::countr_zero(xs);
    for (std::uint64_t ys = mask; ys; ys &= ys - 1) {
      const int y = std::countr_zero(ys);
      if (x == y) continue;
      const std::array<int, 3> key{inv[x], inv[y], pair_count(x, y)};
      if (key > best_key) {
        best_key = key;
        pairs.clear();
      }
      if (key == best_key) pairs.emplace_back(x, y);
    }
  }
  std::uint64_t best = 0;
  for (const auto& [x, y] : pairs) {
    const auto moved = apply(transversal_[static_cast<std::size_t>(x) * degree_ + y], mask);
    for (std::size_t h = 0; h < stabilizer_.size(); ++h) best = std::max(best, apply_stabilizer(h, moved));
  }
  return best;
}

std::uint64_t EvenPointGroup::canonical_bruteforce(std::uint64_t mask) const {
  if (all_.empty()) throw InputError("brute-force canonical form is kept for g <= 2 only");
  std::uint64_t best = 0;
  for (const auto& perm : all_) best = std::max(best, apply(perm, mask));
  return best;
}

}  // namespace thetalab
