#pragma once

// Numerical checks of identities between theta values.

#include <vector>

#include "thetalab/characteristic.hpp"
#include "thetalab/constants.hpp"
#include "thetalab/int_matrix.hpp"
#include "thetalab/period_matrix.hpp"
#include "thetalab/theta.hpp"

namespace thetalab {

// Addition formula for half-integer characteristics:
//   theta[d;e](tau,0) theta[d;e](tau,2z)
//     = sum_s (-1)^{4 e.s} theta[s;0](2tau,2z) theta[d+s;0](2tau,2z),
// s over (1/2)Z^g / Z^g.  Returns |lhs - rhs| / (1 + max(|lhs|, |rhs|)).
double addition_residual(const PeriodMatrix& tau, const ComplexVector& z, const Characteristic& c,
                         const ThetaOptions& opts = {});

// |sum_{m in K+} v_m theta_m(tau,0)^2 theta_m(tau,2z)^2| / (1 + sum of term moduli),
// v the given column of N.  N must carry K+ row labels in canonical order.
double fay_relation_residual(const PeriodMatrix& tau, const ComplexVector& z, const IntMatrix& N, int column,
                             const ThetaOptions& opts = {});

struct RankPolicy {
  double zero = 1e-8;     // singular values below zero * sigma_max are zero
  double nonzero = 1e-4;  // above nonzero * sigma_max are nonzero; between: AmbiguityError
};

struct QhProfile {
  int g = 0;
  int n = 0;
  std::vector<Characteristic> mu;  // level-n vectors mu, as characteristics (0; mu)
  std::vector<int> ranks;          // numerical rank of T_mu
  int rank_sum = 0;
  int theta_n = 0;
  int defect = 0;  // n^{2g} - rank_sum - theta_n
  double smallest_kept = 1.0;    // smallest relative singular value counted as nonzero
  double largest_dropped = 0.0;  // largest relative singular value counted as zero
};

// T_mu[d, e] = exp(2 pi i n d.e) theta[d;mu](tau,0) over d, e in (1/n)Z^g/Z^g.
QhProfile qh_rank_profile(const PeriodMatrix& tau, int n, const ThetaOptions& opts = {},
                          const RankPolicy& rank_policy = {}, const ThresholdPolicy& policy = {});

}  // namespace thetalab
