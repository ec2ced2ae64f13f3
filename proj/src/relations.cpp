#include "thetalab/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SVD>

#include "thetalab/errors.hpp"

namespace thetalab {

double addition_residual(const PeriodMatrix& tau, const ComplexVector& z, const Characteristic& c,
                         const ThetaOptions& opts) {
  if (c.level() != 2) throw InputError("addition_residual needs a half-integer characteristic");
  const int g = tau.genus();
  const ComplexVector zero = ComplexVector::Zero(g);
  const ComplexVector z2 = 2.0 * z;
  const Complex lhs = theta(tau, zero, c, opts).value * theta(tau, z2, c, opts).value;

  const PeriodMatrix tau2 = tau.scaled(2.0);
  Complex rhs(0.0, 0.0);
  for (const auto& s : enumerate(g, 2)) {
    // s runs over (a; 0) only; skip the others.
    if (std::any_of(s.b().begin(), s.b().end(), [](int x) { return x != 0; })) continue;
    int e_dot_s = 0;
    std::vector<int> shifted(g), zeros(g, 0);
    for (int i = 0; i < g; ++i) {
      e_dot_s += c.b()[i] * s.a()[i];
      shifted[i] = c.a()[i] + s.a()[i];
    }
    const Characteristic plain(g, 2, s.a(), zeros);
    const Characteristic moved(g, 2, shifted, zeros);
    const Complex term = theta(tau2, z2, plain, opts).value * theta(tau2, z2, moved, opts).value;
    rhs += (e_dot_s % 2 ? -1.0 : 1.0) * term;
  }
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

double fay_relation_residual(const PeriodMatrix& tau, const ComplexVector& z, const IntMatrix& N, int column,
                             const ThetaOptions& opts) {
  const int g = tau.genus();
  if (column < 0 || column >= N.cols()) throw InputError("fay_relation_residual: column out of range");
  if (N.row_labels() != isotropic_vectors(g))
    throw InputError("fay_relation_residual: N rows are not K+ in canonical order");
  const ComplexVector zero = ComplexVector::Zero(g);
  const ComplexVector z2 = 2.0 * z;
  Complex sum(0.0, 0.0);
  double scale = 0.0;
  for (int i = 0; i < N.rows(); ++i) {
    const Characteristic c = N.row_labels()[i].to_characteristic();
    const Complex t0 = theta(tau, zero, c, opts).value;
    const Complex tz = theta(tau, z2, c, opts).value;
    const Complex term = static_cast<double>(N(i, column)) * t0 * t0 * tz * tz;
    sum += term;
    scale += std::abs(term);
  }
  return std::abs(sum) / (1.0 + scale);
}

QhProfile qh_rank_profile(const PeriodMatrix& tau, int n, const ThetaOptions& opts, const RankPolicy& rank_policy,
                          const ThresholdPolicy& policy) {
  const int g = tau.genus();
  if (n < 2) throw InputError("level must be >= 2");
  if (g > 3) throw InputError("qh_rank_profile supports g <= 3");
  const ConstantTable table = constant_table(tau, n, opts, TableMethod::automatic, policy);

  QhProfile out;
  out.g = g;
  out.n = n;
  out.theta_n = table.vanishing_count();
  std::size_t side = 1;
  for (int i = 0; i < g; ++i) side *= static_cast<std::size_t>(n);
  // The first n^g characteristics in canonical order are (0; b) with b over (Z/n)^g.
  const auto all = enumerate(g, n);
  std::vector<std::vector<int>> points;
  for (std::size_t i = 0; i < side; ++i) points.push_back(all[i].b());

  for (const auto& mu : points) {
    Eigen::MatrixXcd T(side, side);
    for (std::size_t r = 0; r < side; ++r) {
      const Complex value = table.records[Characteristic(g, n, points[r], mu).canonical_index()].value;
      for (std::size_t c = 0; c < side; ++c) {
        long long dot = 0;
        for (int i = 0; i < g; ++i) dot += static_cast<long long>(points[r][i]) * points[c][i];
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(dot % n) / n;
        T(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = std::polar(1.0, phase) * value;
      }
    }
    const Characteristic zero_mu(g, n, std::vector<int>(g, 0), mu);
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(T).singularValues();
    const double top = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size() && top > 0.0; ++i) {
      const double rel = sv(i) / top;
      if (rel > rank_policy.nonzero) {
        ++rank;
        out.smallest_kept = std::min(out.smallest_kept, rel);
      } else if (rel < rank_policy.zero) {
        out.largest_dropped = std::max(out.largest_dropped, rel);
      } else {
        std::ostringstream os;
        os << "singular value ratio " << rel << " of T_mu for " << zero_mu.label()
           << " is inside the rank band";
        throw AmbiguityError(os.str(), "T_mu", rel);
      }
    }
    out.mu.push_back(zero_mu);
    out.ranks.push_back(rank);
    out.rank_sum += rank;
  }
  long long total = 1;
  for (int i = 0; i < 2 * g; ++i) total *= n;
  out.defect = static_cast<int>(total - out.rank_sum - out.theta_n);
  return out;
}

}  // namespace thetalab
