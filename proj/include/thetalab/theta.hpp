#pragma once

// Theta functions with rational characteristics,
//
//   theta[d;e](tau, z) = sum_{m in Z^g} exp(pi i (m+d)^t tau (m+d) + 2 pi i (m+d)^t (z+e)),
//
// evaluated with a rigorous bound on the truncation error.

#include "thetalab/characteristic.hpp"
#include "thetalab/period_matrix.hpp"

namespace thetalab {

struct ThetaOptions {
  double tol = 1e-12;   // absolute bound on the truncation error
  int radius_cap = 60;  // largest box radius tried before giving up
};

struct ThetaValue {
  Complex value;
  double tail_bound = 0.0;  // |value - exact| <= tail_bound, up to rounding
  int radius_used = 0;
};

// z is first moved into the fundamental parallelogram (z = tau p + q with
// p, q in [-1/2, 1/2)) and the quasi-periodicity factor is applied to the
// result, so the value is theta at the original z.  Throws ConvergenceError
// when tol cannot be met within radius_cap, InputError on size mismatch.
ThetaValue theta(const PeriodMatrix& tau, const ComplexVector& z, const Characteristic& c,
                 const ThetaOptions& opts = {});

ThetaValue theta_constant(const PeriodMatrix& tau, const Characteristic& c,
                          const ThetaOptions& opts = {});

// Number of lattice points with sup-norm exactly s in Z^g.
double shell_count(int g, int s);

}  // namespace thetalab
