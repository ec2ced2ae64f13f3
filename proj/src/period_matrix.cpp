#include "thetalab/period_matrix.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "thetalab/errors.hpp"

namespace thetalab {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

}  // namespace

PeriodMatrix::PeriodMatrix(Eigen::MatrixXcd tau) : tau_(std::move(tau)) {
  const auto g = tau_.rows();
  if (g < 1 || tau_.cols() != g) throw InputError("period matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < g; ++j) {
      if (!std::isfinite(tau_(i, j).real()) || !std::isfinite(tau_(i, j).imag()))
        throw InputError("period matrix has non-finite entries");
      if (std::abs(tau_(i, j) - tau_(j, i)) > kSymmetryTolerance)
        throw InputError("period matrix is not symmetric");
    }
  tau_ = (0.5 * (tau_ + tau_.transpose())).eval();
  imag_ = tau_.imag();

  Eigen::LLT<Eigen::MatrixXd> llt(imag_);
  if (llt.info() != Eigen::Success) throw InputError("imaginary part is not positive definite");
  imag_inverse_ = llt.solve(Eigen::MatrixXd::Identity(g, g));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(imag_, Eigen::EigenvaluesOnly);
  // Shrink slightly so the tail majorant stays an upper bound under rounding.
  lambda_min_ = eig.eigenvalues().minCoeff() * (1.0 - 1e-10);
  if (!(lambda_min_ > 0.0)) throw InputError("imaginary part is not positive definite");
}

PeriodMatrix PeriodMatrix::from_parts(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols()) throw InputError("re/im shape mismatch");
  Eigen::MatrixXcd tau(re.rows(), re.cols());
  tau.real() = re;
  tau.imag() = im;
  return PeriodMatrix(std::move(tau));
}

PeriodMatrix PeriodMatrix::diagonal(const std::vector<Complex>& entries) {
  const auto g = static_cast<Eigen::Index>(entries.size());
  Eigen::MatrixXcd tau = Eigen::MatrixXcd::Zero(g, g);
  for (Eigen::Index i = 0; i < g; ++i) tau(i, i) = entries[i];
  return PeriodMatrix(std::move(tau));
}

PeriodMatrix PeriodMatrix::from_json(const nlohmann::json& j) {
  try {
    const int g = j.at("g").get<int>();
    if (g < 1 || g > 8) throw InputError("period matrix genus out of range");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(g) ||
        im.size() != static_cast<std::size_t>(g))
      throw InputError("period matrix rows do not match g");
    Eigen::MatrixXd r(g, g), i(g, g);
    for (int row = 0; row < g; ++row) {
      if (re[row].size() != static_cast<std::size_t>(g) || im[row].size() != static_cast<std::size_t>(g))
        throw InputError("period matrix columns do not match g");
      for (int col = 0; col < g; ++col) {
        r(row, col) = re[row][col].get<double>();
        i(row, col) = im[row][col].get<double>();
      }
    }
    return from_parts(r, i);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed period matrix JSON: ") + e.what());
  }
}

PeriodMatrix PeriodMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open period matrix file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return from_json(j);
}

nlohmann::json PeriodMatrix::to_json() const {
  const int g = genus();
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int i = 0; i < g; ++i) {
    nlohmann::json rr = nlohmann::json::array(), ir = nlohmann::json::array();
    for (int j = 0; j < g; ++j) {
      rr.push_back(tau_(i, j).real());
      ir.push_back(tau_(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"g", g}, {"re", re}, {"im", im}};
}

PeriodMatrix PeriodMatrix::scaled(double factor) const { return PeriodMatrix(tau_ * factor); }

std::vector<std::vector<int>> PeriodMatrix::diagonal_blocks() const {
  const int g = genus();
  std::vector<int> parent(g);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j)
      if (tau_(i, j) != Complex(0.0, 0.0)) parent[find(i)] = find(j);
  std::vector<std::vector<int>> blocks;
  std::vector<int> slot(g, -1);
  for (int i = 0; i < g; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

PeriodMatrix PeriodMatrix::sub_matrix(const std::vector<int>& indices) const {
  const auto k = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXcd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = tau_(indices[i], indices[j]);
  return PeriodMatrix(std::move(sub));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

PeriodMatrix random_period_matrix(int g, std::mt19937_64& rng) {
  if (g < 1) throw InputError("genus must be >= 1");
  Eigen::MatrixXd re(g, g), c(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) re(i, j) = re(j, i) = uniform(rng, -0.5, 0.5);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) c(i, j) = uniform(rng, -0.5, 0.5);
  const Eigen::MatrixXd im = c.transpose() * c + 0.5 * Eigen::MatrixXd::Identity(g, g);
  return PeriodMatrix::from_parts(re, 0.5 * (im + im.transpose()));
}

ComplexVector random_point(const PeriodMatrix& tau, std::mt19937_64& rng) {
  const int g = tau.genus();
  Eigen::VectorXd p(g), q(g);
  for (int i = 0; i < g; ++i) p(i) = uniform(rng, -0.5, 0.5);
  for (int i = 0; i < g; ++i) q(i) = uniform(rng, -0.5, 0.5);
  return tau.tau() * p.cast<Complex>() + q.cast<Complex>();
}

}  // namespace thetalab
