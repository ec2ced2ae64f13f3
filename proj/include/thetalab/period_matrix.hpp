#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace thetalab {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

// A point of the Siegel upper half space: symmetric complex g x g matrix with
// positive definite imaginary part.  Immutable; caches the data the theta
// evaluator needs (Im(tau)^{-1} and a lower bound on its smallest eigenvalue).
class PeriodMatrix {
 public:
  explicit PeriodMatrix(Eigen::MatrixXcd tau);

  static PeriodMatrix from_parts(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im);
  static PeriodMatrix diagonal(const std::vector<Complex>& entries);

  // {"g": int, "re": [[...]], "im": [[...]]}, row-major.
  static PeriodMatrix from_json(const nlohmann::json& j);
  static PeriodMatrix load(const std::string& path);
  nlohmann::json to_json() const;

  int genus() const noexcept { return static_cast<int>(tau_.rows()); }
  const Eigen::MatrixXcd& tau() const noexcept { return tau_; }
  Eigen::MatrixXd real() const { return tau_.real(); }
  const Eigen::MatrixXd& imag() const noexcept { return imag_; }
  const Eigen::MatrixXd& imag_inverse() const noexcept { return imag_inverse_; }
  double imag_min_eigenvalue() const noexcept { return lambda_min_; }

  PeriodMatrix scaled(double factor) const;

  // Index groups of the exact block structure (entries that are exactly zero
  // off the blocks).  A single group means tau is not block diagonal.
  std::vector<std::vector<int>> diagonal_blocks() const;
  PeriodMatrix sub_matrix(const std::vector<int>& indices) const;

 private:
  Eigen::MatrixXcd tau_;
  Eigen::MatrixXd imag_;
  Eigen::MatrixXd imag_inverse_;
  double lambda_min_ = 0.0;
};

// Uniform double in [lo, hi) from raw 64-bit engine output, so sequences do not
// depend on the standard library's distribution implementation.
double uniform(std::mt19937_64& rng, double lo, double hi);

// tau = A + iB with A symmetric, entries uniform in [-1/2, 1/2], and
// B = C^t C + I/2 with C uniform in [-1/2, 1/2].
PeriodMatrix random_period_matrix(int g, std::mt19937_64& rng);

// z = tau p + q with p, q uniform in [-1/2, 1/2)^g.
ComplexVector random_point(const PeriodMatrix& tau, std::mt19937_64& rng);

}  // namespace thetalab
