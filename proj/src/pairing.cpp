#include "thetalab/pairing.hpp"

#include <string>

#include "thetalab/errors.hpp"

namespace thetalab {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_genus(int g, int max_g) {
  if (g < 1 || g > max_g) throw InputError("genus must be in [1, " + std::to_string(max_g) + "]");
}

int kernel_dim(const IntMatrix& a) { return a.cols() - exact_rank(a); }

// Kernel of `lhs` equals kernel of `rhs` (same column count).
bool same_kernel(const IntMatrix& lhs, const IntMatrix& rhs) {
  const int r = exact_rank(lhs);
  return r == exact_rank(rhs) && r == exact_rank(lhs.stacked(rhs));
}

// Kernel of `lhs` is contained in the kernel of `rhs`.
bool kernel_within(const IntMatrix& lhs, const IntMatrix& rhs) {
  return exact_rank(lhs.stacked(rhs)) == exact_rank(lhs);
}

std::string sign(std::int64_t x) { return (x >= 0 ? "+" : "") + std::to_string(x); }

}  // namespace

IntMatrix build_M(int g) {
  check_genus(g, 4);
  const auto order = pairing_order(g);
  const int size = static_cast<int>(order.size());
  IntMatrix M(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) M(i, j) = symplectic_pairing(order[i], order[j]) ? -1 : 1;
  M.set_labels(order, order);
  return M;
}

PairingBlocks split_blocks(const IntMatrix& M) {
  if (!M.labeled()) throw InputError("split_blocks needs a labeled matrix");
  const auto& labels = M.row_labels();
  int kplus = 0;
  while (kplus < M.rows() && quadratic_class(labels[kplus]) == QuadraticClass::isotropic) ++kplus;
  for (int i = kplus; i < M.rows(); ++i)
    if (quadratic_class(labels[i]) != QuadraticClass::anisotropic)
      throw InputError("split_blocks: labels are not ordered isotropic first");
  const int kminus = M.rows() - kplus;
  return {M.block(0, 0, kplus, kplus), M.block(kplus, kplus, kminus, kminus), M.block(0, kplus, kplus, kminus)};
}

ClaimReport verify_fay_spectrum(const IntMatrix& M) {
  if (!M.labeled() || M.rows() != M.cols()) throw InputError("verify_fay_spectrum needs a labeled square matrix");
  const int g = M.row_labels().front().genus();
  check_genus(g, 3);
  const auto blocks = split_blocks(M);
  const IntMatrix& P = blocks.plus;
  const IntMatrix& Q = blocks.minus;
  const IntMatrix& N = blocks.N;
  const int kp = P.rows(), km = Q.rows(), size = M.rows();
  const std::int64_t G = pow2(g), H = pow2(g - 1), F = ipow(4, g);
  ClaimReport r;
  const std::string tag = "g=" + std::to_string(g) + ": ";

  r.add_check(tag + "M symmetric with unit diagonal", M.is_symmetric() && M.trace() == size);
  r.add_check(tag + "M^2 = 4^g I", M * M == IntMatrix::identity(size).scaled(F));

  const long long kplus = H * (G + 1), kminus = H * (G - 1);
  r.add(tag + "dim K+", kplus, kp);
  r.add(tag + "dim K-", kminus, km);
  const int m_pos = kernel_dim(M.shifted(-G)), m_neg = kernel_dim(M.shifted(G));
  r.add(tag + "M eigenvalue " + sign(G) + " multiplicity", kplus, m_pos);
  r.add(tag + "M eigenvalue " + sign(-G) + " multiplicity", kminus, m_neg);
  r.add(tag + "M multiplicities exhaust the spectrum", size, m_pos + m_neg);

  const long long p_top = (G + 1) * (H + 1) / 3, p_low = (F - 1) / 3;
  const int pp = kernel_dim(P.shifted(-G)), pn = kernel_dim(P.shifted(H));
  r.add(tag + "M+ eigenvalue " + sign(G) + " multiplicity", p_top, pp);
  r.add(tag + "M+ eigenvalue " + sign(-H) + " multiplicity", p_low, pn);
  r.add(tag + "M+ multiplicities exhaust the spectrum", kp, pp + pn);

  const long long q_top = (G - 1) * (H - 1) / 3, q_low = (F - 1) / 3;
  const int qn = kernel_dim(Q.shifted(G)), qp = kernel_dim(Q.shifted(-H));
  r.add(tag + "M- eigenvalue " + sign(-G) + " multiplicity", q_top, qn);
  r.add(tag + "M- eigenvalue " + sign(H) + " multiplicity", q_low, qp);
  r.add(tag + "M- multiplicities exhaust the spectrum", km, qn + qp);

  r.add_check(tag + "columns of N: M+ X = -2^{g-1} X", P * N == N.scaled(-H));
  r.add_check(tag + "rows of N: M- Y = 2^{g-1} Y for Y = N^t X", Q * N.transpose() == N.transpose().scaled(H));
  r.add(tag + "rank N", (F - 1) / 3, exact_rank(N));
  r.add_check(tag + "columns of N span the M+ eigenspace for -2^{g-1}", exact_rank(N) == pn);

  // The six eigenvector relations, as statements about kernels in (X, Y).
  const IntMatrix Zpm(kp, km), Zmp(km, kp), Ip = IntMatrix::identity(kp), Im = IntMatrix::identity(km);
  const IntMatrix Nt = N.transpose();
  r.add_check(tag + "M(X;Y) = 2^g (X;Y) iff M- Y = 2^{g-1} Y = N^t X",
              same_kernel(M.shifted(-G), Zmp.side_by_side(Q.shifted(-H)).stacked(Nt.side_by_side(Im.scaled(-H)))));
  r.add_check(tag + "M(X;Y) = -2^g (X;Y) iff M+ X = -2^{g-1} X = N Y",
              same_kernel(M.shifted(G), P.shifted(H).side_by_side(Zpm).stacked(Ip.scaled(H).side_by_side(N))));
  r.add_check(tag + "M+ X = 2^g X iff N^t X = 0", same_kernel(P.shifted(-G), Nt));
  r.add_check(tag + "M- Y = -2^g Y iff N Y = 0", same_kernel(Q.shifted(G), N));
  r.add_check(tag + "M+ X - N Y = 0 implies M+ X = -2^{g-1} X",
              kernel_within(P.side_by_side(N.scaled(-1)), P.shifted(H).side_by_side(Zpm)));
  r.add_check(tag + "N^t X - M- Y = 0 implies M- Y = 2^{g-1} Y",
              kernel_within(Nt.side_by_side(Q.scaled(-1)), Zmp.side_by_side(Q.shifted(-H))));

  // Sample eigenvectors: columns of (M + 2^g I) lie in the +2^g eigenspace and
  // columns of (M - 2^g I) in the -2^g one, since (M - 2^g)(M + 2^g) = 0.
  bool forward_pos = true, forward_neg = true;
  const IntMatrix Vp = M.shifted(G), Vn = M.shifted(-G);
  for (int j = 0; j < size; ++j) {
    const IntMatrix v = Vp.column(j), w = Vn.column(j);
    const IntMatrix X = v.block(0, 0, kp, 1), Y = v.block(kp, 0, km, 1);
    forward_pos = forward_pos && M * v == v.scaled(G) && Q * Y == Y.scaled(H) && Nt * X == Y.scaled(H);
    const IntMatrix U = w.block(0, 0, kp, 1), W = w.block(kp, 0, km, 1);
    forward_neg = forward_neg && M * w == w.scaled(-G) && P * U == U.scaled(-H) && N * W == U.scaled(-H);
  }
  r.add_check(tag + "sample +2^g eigenvectors satisfy the block relations", forward_pos);
  r.add_check(tag + "sample -2^g eigenvectors satisfy the block relations", forward_neg);
  return r;
}

ClaimReport verify_fay_spectrum(int g) { return verify_fay_spectrum(build_M(g)); }

ClaimReport verify_B_identity(const PairingBlocks& blocks) {
  const int kp = blocks.plus.rows();
  int g = 1;
  while (pow2(g - 1) * (pow2(g) + 1) < kp) ++g;
  const std::int64_t G = pow2(g), H = pow2(g - 1), F = ipow(4, g);
  const std::string tag = "g=" + std::to_string(g) + ": ";
  const IntMatrix B = blocks.N * blocks.N.transpose();
  const IntMatrix rhs = blocks.plus.scaled(-1).shifted(G).scaled(H);
  ClaimReport r;
  r.add_check(tag + "B = N N^t = 2^{g-1}(2^g I - M+)", B == rhs);
  r.add(tag + "diagonal of B", H * (G - 1), B(0, 0));
  r.add(tag + "rank B", (F - 1) / 3, exact_rank(B));
  return r;
}

IntMatrix build_B(int g) {
  check_genus(g, 3);
  const auto blocks = split_blocks(build_M(g));
  verify_B_identity(blocks).require();
  IntMatrix B = blocks.N * blocks.N.transpose();
  B.set_labels(blocks.plus.row_labels(), blocks.plus.col_labels());
  return B;
}

IntMatrix build_L(int g) {
  check_genus(g, 4);
  const IntMatrix base = split_blocks(build_M(1)).plus;
  IntMatrix L = base;
  for (int i = 1; i < g; ++i) L = L.kron(base);
  return L;
}

ClaimReport verify_L_spectrum(const IntMatrix& L, int g) {
  ClaimReport r;
  const std::string tag = "g=" + std::to_string(g) + ": ";
  long long total = 0;
  for (int k = 0; k <= g; ++k) {
    const std::int64_t lambda = (k % 2 ? -1 : 1) * pow2(g - k);
    const long long expected = binomial(g, k) * pow2(g - k);
    const int got = kernel_dim(L.shifted(-lambda));
    total += got;
    r.add(tag + "L(g) eigenvalue " + sign(lambda) + " multiplicity", expected, got);
  }
  r.add(tag + "L(g) multiplicities exhaust the spectrum", L.rows(), total);
  return r;
}

std::vector<int> bk_indices(int g) {
  check_genus(g, 4);
  const auto kplus = isotropic_vectors(g);
  std::vector<int> out;
  long long count = ipow(3, g);
  for (long long idx = 0; idx < count; ++idx) {
    std::vector<int> a(g), b(g);
    long long rest = idx;
    for (int i = g - 1; i >= 0; --i) {
      const int digit = static_cast<int>(rest % 3);
      rest /= 3;
      a[i] = digit == 2;
      b[i] = digit == 1;
    }
    const F2Vector v = F2Vector::from_bits(g, a, b);
    for (int j = 0; j < static_cast<int>(kplus.size()); ++j)
      if (kplus[j] == v) out.push_back(j);
  }
  return out;
}

ClaimReport verify_Bk(const IntMatrix& B, int g) {
  const std::int64_t G = pow2(g), H = pow2(g - 1);
  const std::string tag = "g=" + std::to_string(g) + ": ";
  const IntMatrix Bk = B.principal(bk_indices(g));
  ClaimReport r;
  r.add(tag + "B_k order 3^g", ipow(3, g), Bk.rows());
  r.add_check(tag + "B_k = 2^{g-1}(2^g I - L(g))", Bk == build_L(g).scaled(-1).shifted(G).scaled(H));
  r.add(tag + "rank B_k", ipow(3, g) - G, exact_rank(Bk));
  return r;
}

IntMatrix build_Bk(int g) {
  check_genus(g, 3);
  const IntMatrix B = build_B(g);
  verify_Bk(B, g).require();
  return B.principal(bk_indices(g));
}

ClaimReport verify_pairing_suite(int g, bool inject_fault) {
  check_genus(g, 3);
  IntMatrix M = build_M(g);
  if (inject_fault) M(0, M.cols() - 1) = -M(0, M.cols() - 1);
  ClaimReport r = verify_fay_spectrum(M);
  const auto blocks = split_blocks(M);
  r.append(verify_B_identity(blocks));
  r.append(verify_L_spectrum(build_L(g), g));
  IntMatrix B = blocks.N * blocks.N.transpose();
  r.append(verify_Bk(B, g));
  return r;
}

}  // namespace thetalab
