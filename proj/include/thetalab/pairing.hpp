#pragma once

// The sign matrix of the mod-2 symplectic pairing and its relatives:
//
//   M(g)  = ((-1)^<m,n>)  over F_2^{2g}, rows/cols ordered K+ then K-
//   M = [[M+, N], [N^t, M-]]
//   B     = N N^t = 2^{g-1}(2^g I - M+)
//   L(g)  = M+(1) (x) ... (x) M+(1)
//   B_k   = principal submatrix of B on even m with a_i b_i = 0 for all i
//
// Every spectral statement is checked through exact ranks of A - lambda I.

#include <vector>

#include "thetalab/claims.hpp"
#include "thetalab/int_matrix.hpp"

namespace thetalab {

IntMatrix build_M(int g);  // g <= 4

struct PairingBlocks {
  IntMatrix plus;   // M+, k+ x k+
  IntMatrix minus;  // M-, k- x k-
  IntMatrix N;      // k+ x k-
};

// Requires the labels set by build_M (isotropic rows first).
PairingBlocks split_blocks(const IntMatrix& M);

// Multiplicities of +-2^g in M and of the two eigenvalues of M+ and M-, the
// block relations M+ N = -2^{g-1} N and rank N, and the six eigenvector
// relations between M and its blocks, each checked as an equality or
// inclusion of kernels via exact ranks, plus sample eigenvectors.
ClaimReport verify_fay_spectrum(const IntMatrix& M);
ClaimReport verify_fay_spectrum(int g);

// N N^t, after checking it equals 2^{g-1}(2^g I - M+) entrywise; throws
// VerificationError otherwise.  Carries the K+ labels.
IntMatrix build_B(int g);
ClaimReport verify_B_identity(const PairingBlocks& blocks);

IntMatrix build_L(int g);  // g <= 4
ClaimReport verify_L_spectrum(const IntMatrix& L, int g);

// Positions in K+ order of the characteristics with a_i b_i = 0 for every i,
// listed in mixed-radix order (coordinate 1 most significant) with
// (a_i, b_i) = 00, 01, 10 as digits 0, 1, 2.
std::vector<int> bk_indices(int g);

// Principal submatrix of B on bk_indices(g); checks it equals
// 2^{g-1}(2^g I - L(g)), throws VerificationError otherwise.
IntMatrix build_Bk(int g);
ClaimReport verify_Bk(const IntMatrix& B, int g);

// Every exact claim above for one genus.  With inject_fault, one entry of M is
// flipped before the checks (negative test of the verification path).
ClaimReport verify_pairing_suite(int g, bool inject_fault = false);

}  // namespace thetalab
