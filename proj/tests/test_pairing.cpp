#include <doctest.h>

#include <cmath>
#include <random>

#include <gmpxx.h>

#include "thetalab/errors.hpp"
#include "thetalab/int_matrix.hpp"
#include "thetalab/pairing.hpp"

using namespace thetalab;

namespace {

// Rank by Gaussian elimination over Q.
int rational_rank(const IntMatrix& a) {
  std::vector<std::vector<mpq_class>> m(a.rows(), std::vector<mpq_class>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m[i][j] = static_cast<long>(a(i, j));
  int rank = 0;
  for (int col = 0; col < a.cols() && rank < a.rows(); ++col) {
    int pivot = -1;
    for (int i = rank; i < a.rows(); ++i)
      if (m[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int i = rank + 1; i < a.rows(); ++i) {
      if (m[i][col] == 0) continue;
      const mpq_class f = m[i][col] / m[rank][col];
      for (int j = col; j < a.cols(); ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Random rows x cols integer matrix of rank at most r.
IntMatrix low_rank(int rows, int cols, int r, std::mt19937_64& rng) {
  IntMatrix x(rows, r), y(r, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < r; ++k) x(i, k) = static_cast<std::int64_t>(rng() % 41) - 20;
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < cols; ++j) y(k, j) = static_cast<std::int64_t>(rng() % 41) - 20;
  return x * y;
}

int sign_of_pairing(const F2Vector& x, const F2Vector& y) {
  int s = 0;
  for (int i = 0; i < x.genus(); ++i) s ^= (x.a(i) & y.b(i)) ^ (x.b(i) & y.a(i));
  return s ? -1 : 1;
}

}  // namespace

TEST_CASE("exact rank agrees with rational elimination") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 12), cols = 1 + static_cast<int>(rng() % 12);
    const int r = static_cast<int>(rng() % (std::min(rows, cols) + 1));
    const IntMatrix a = low_rank(rows, cols, r, rng);
    const int exact = exact_rank(a);
    CHECK(exact == rational_rank(a));
    CHECK(exact <= r);
    CHECK(modular_rank(a) <= exact);
    CHECK(exact_rank(a.transpose()) == exact);
  }
  CHECK(exact_rank(IntMatrix(3, 4)) == 0);
  CHECK(exact_rank(IntMatrix::identity(7)) == 7);
  // Entries whose products overflow 64 bits in naive elimination.
  IntMatrix big(3, 3);
  const std::int64_t h = 3037000499LL;
  big(0, 0) = h; big(0, 1) = h - 1; big(0, 2) = 1;
  big(1, 0) = h - 1; big(1, 1) = h - 2; big(1, 2) = 1;
  big(2, 0) = 2 * h - 1; big(2, 1) = 2 * h - 3; big(2, 2) = 2;
  CHECK(exact_rank(big) == rational_rank(big));
}

TEST_CASE("integer matrix helpers") {
  IntMatrix a(2, 2);
  a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
  CHECK(a.trace() == 5);
  CHECK(a.shifted(-1).trace() == 3);
  CHECK((a * IntMatrix::identity(2)) == a);
  CHECK(a.kron(IntMatrix::identity(2)).rows() == 4);
  CHECK(a.kron(IntMatrix::identity(2))(3, 3) == 4);
  CHECK(a.principal({1})(0, 0) == 4);
  CHECK(a.stacked(a).rows() == 4);
  CHECK(a.side_by_side(a).cols() == 4);
  CHECK_FALSE(a.is_symmetric());
  CHECK_THROWS_AS(a * IntMatrix(3, 3), InputError);
}

TEST_CASE("M is the sign matrix of the pairing") {
  for (int g = 1; g <= 3; ++g) {
    const IntMatrix M = build_M(g);
    const auto order = pairing_order(g);
    REQUIRE(M.rows() == 1 << (2 * g));
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) CHECK(M(i, j) == sign_of_pairing(order[i], order[j]));
    const std::int64_t F = std::int64_t{1} << (2 * g), G = std::int64_t{1} << g;
    CHECK((M * M) == IntMatrix::identity(M.rows()).scaled(F));
    // Multiplicities of +-2^g from ranks computed independently.
    CHECK(M.rows() - rational_rank(M.shifted(-G)) == G * (G + 1) / 2);
    CHECK(M.rows() - rational_rank(M.shifted(G)) == G * (G - 1) / 2);
  }
}

TEST_CASE("blocks, B and B_k") {
  const int rank_n[] = {0, 1, 5, 21};
  const int rank_bk[] = {0, 1, 5, 19};
  for (int g = 1; g <= 3; ++g) {
    const auto blocks = split_blocks(build_M(g));
    const std::int64_t G = std::int64_t{1} << g;
    CHECK(blocks.plus.rows() == G * (G + 1) / 2);
    CHECK(blocks.minus.rows() == G * (G - 1) / 2);
    CHECK(rational_rank(blocks.N) == rank_n[g]);

    const IntMatrix B = build_B(g);
    CHECK(B == blocks.N * blocks.N.transpose());
    CHECK(B == (IntMatrix::identity(B.rows()).scaled(G) - blocks.plus).scaled(G / 2));
    CHECK(B.row_labels() == isotropic_vectors(g));

    const IntMatrix Bk = build_Bk(g);
    CHECK(Bk.rows() == static_cast<int>(std::pow(3, g)));
    CHECK(rational_rank(Bk) == rank_bk[g]);
    CHECK(Bk == B.principal(bk_indices(g)));
    CHECK(Bk == (IntMatrix::identity(Bk.rows()).scaled(G) - build_L(g)).scaled(G / 2));
  }
}

TEST_CASE("L(g) is the Kronecker power of M+(1)") {
  const IntMatrix L1 = build_L(1);
  CHECK(L1 == split_blocks(build_M(1)).plus);
  CHECK(build_L(2) == L1.kron(L1));
  CHECK(build_L(3) == L1.kron(L1).kron(L1));
  // Eigenvalues 2^a (-1)^(g-a) with multiplicity C(g,a) 2^a.
  const IntMatrix L3 = build_L(3);
  CHECK(27 - rational_rank(L3.shifted(-8)) == 8);
  CHECK(27 - rational_rank(L3.shifted(4)) == 12);
  CHECK(27 - rational_rank(L3.shifted(-2)) == 6);
  CHECK(27 - rational_rank(L3.shifted(1)) == 1);
}

TEST_CASE("claim suites") {
  for (int g = 1; g <= 3; ++g) {
    const ClaimReport r = verify_pairing_suite(g);
    CHECK(r.all_passed());
    CHECK(r.claims().size() >= 20);
    CHECK_NOTHROW(r.require());
  }
  const ClaimReport bad = verify_pairing_suite(2, true);
  CHECK_FALSE(bad.all_passed());
  CHECK(bad.failures() > 0);
  CHECK_THROWS_AS(bad.require(), VerificationError);
  try {
    bad.require();
  } catch (const VerificationError& e) {
    CHECK(e.claim().rfind("g=2: ", 0) == 0);
  }
  CHECK_THROWS_AS(build_M(5), InputError);
}

TEST_CASE("labels survive export") {
  const auto j = build_B(1).to_json();
  CHECK(j["rows"] == 3);
  CHECK(j["row_labels"].size() == 3);
  CHECK(j["data"][0][0] == 1);
}
