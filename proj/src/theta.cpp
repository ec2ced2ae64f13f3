#include "thetalab/theta.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "thetalab/errors.hpp"

namespace thetalab {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

// Bound on sum_{s > radius} shell_count(g, s) exp(-pi lambda (s - 1/2)^2).
// Terms are summed explicitly until the ratio of consecutive terms drops
// below 1/2, after which the remainder is a geometric majorant.
double shell_tail(int g, double lambda, int radius) {
  double sum = 0.0;
  for (int s = radius + 1;; ++s) {
    const double term = shell_count(g, s) * std::exp(-kPi * lambda * (s - 0.5) * (s - 0.5));
    const double ratio = shell_count(g, s + 1) / shell_count(g, s) * std::exp(-2.0 * kPi * lambda * s);
    if (ratio < 0.5) return sum + term / (1.0 - ratio);
    sum += term;
    if (!std::isfinite(sum)) return sum;
  }
}

}  // namespace

double shell_count(int g, int s) {
  if (s == 0) return 1.0;
  return std::pow(2.0 * s + 1.0, g) - std::pow(2.0 * s - 1.0, g);
}

ThetaValue theta(const PeriodMatrix& tau, const ComplexVector& z, const Characteristic& c,
                 const ThetaOptions& opts) {
  const int g = tau.genus();
  if (z.size() != g || c.genus() != g) throw InputError("theta: dimension mismatch");
  if (!(opts.tol > 0.0)) throw InputError("theta: tolerance must be positive");

  const Eigen::MatrixXcd& T = tau.tau();
  const Eigen::MatrixXd& Y = tau.imag();
  Eigen::VectorXd delta(g), eps(g);
  for (int i = 0; i < g; ++i) {
    delta(i) = c.delta(i);
    eps(i) = c.epsilon(i);
  }

  // z = tau p + q; shift by tau k + l so that p - k, q - l lie in [-1/2, 1/2).
  const Eigen::VectorXd p = tau.imag_inverse() * z.imag();
  const Eigen::VectorXd q = z.real() - tau.real() * p;
  Eigen::VectorXd k(g), l(g);
  for (int i = 0; i < g; ++i) {
    k(i) = std::floor(p(i) + 0.5);
    l(i) = std::floor(q(i) + 0.5);
  }
  const Eigen::VectorXcd kc = k.cast<Complex>();
  const ComplexVector zr = z - T * kc - l.cast<Complex>();
  const Eigen::VectorXd pr = p - k;

  // theta(zr + tau k + l) = exp(-pi i k^t tau k - 2 pi i k^t (zr + e) + 2 pi i d^t l) theta(zr)
  const Complex log_factor = -kI * kPi * kc.dot(T * kc) -
                             2.0 * kI * kPi * kc.dot(zr + eps.cast<Complex>()) +
                             2.0 * kI * kPi * delta.dot(l);
  const double factor_modulus = std::exp(log_factor.real());
  if (!(factor_modulus > 0.0) || !std::isfinite(factor_modulus))
    throw ConvergenceError("theta: quasi-periodicity factor out of floating-point range");

  // Summands have modulus exp(pi p'^t Y p') exp(-pi |m + d + p'|_Y^2); centre the box.
  Eigen::VectorXd centre(g);
  for (int i = 0; i < g; ++i) centre(i) = std::round(delta(i) + pr(i));
  const double envelope = std::exp(kPi * pr.dot(Y * pr));
  const double lambda = tau.imag_min_eigenvalue();

  int radius = 1;
  double tail = 0.0;
  for (;; ++radius) {
    if (radius > opts.radius_cap)
      throw ConvergenceError("theta: tolerance not reachable within radius cap");
    tail = factor_modulus * envelope * shell_tail(g, lambda, radius);
    if (tail <= opts.tol) break;
  }

  const ComplexVector shift = zr + eps.cast<Complex>();
  const int side = 2 * radius + 1;
  std::size_t count = 1;
  for (int i = 0; i < g; ++i) count *= static_cast<std::size_t>(side);

  Complex sum(0.0, 0.0);
  Eigen::VectorXd x(g);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int i = g - 1; i >= 0; --i) {
      const int j = static_cast<int>(rest % side) - radius;
      rest /= side;
      x(i) = j - centre(i) + delta(i);
    }
    const Eigen::VectorXcd xc = x.cast<Complex>();
    const Complex exponent = kI * kPi * xc.dot(T * xc) + 2.0 * kI * kPi * xc.dot(shift);
    sum += std::exp(exponent);
  }

  return {std::exp(log_factor) * sum, tail, radius};
}

ThetaValue theta_constant(const PeriodMatrix& tau, const Characteristic& c, const ThetaOptions& opts) {
  return theta(tau, ComplexVector::Zero(tau.genus()), c, opts);
}

}  // namespace thetalab
