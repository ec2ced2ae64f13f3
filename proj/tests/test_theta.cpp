#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thetalab/errors.hpp"
#include "thetalab/theta.hpp"

using namespace thetalab;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct summation over the box |n_i| <= radius, no reduction of z.
Complex naive_theta(const PeriodMatrix& tau, const ComplexVector& z, const Characteristic& c, int radius) {
  const int g = tau.genus();
  std::vector<int> n(g, -radius);
  Complex sum(0.0, 0.0);
  while (true) {
    Eigen::VectorXd v(g);
    for (int i = 0; i < g; ++i) v(i) = n[i] + c.delta(i);
    Complex q(0.0, 0.0), lin(0.0, 0.0);
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) q += v(i) * tau.tau()(i, j) * v(j);
      lin += v(i) * (z(i) + c.epsilon(i));
    }
    sum += std::exp(Complex(0.0, 1.0) * kPi * q + Complex(0.0, 2.0) * kPi * lin);
    int i = 0;
    while (i < g && n[i] == radius) n[i++] = -radius;
    if (i == g) break;
    ++n[i];
  }
  return sum;
}

}  // namespace

TEST_CASE("theta at tau = i against the closed form") {
  const PeriodMatrix tau = PeriodMatrix::diagonal({Complex(0.0, 1.0)});
  const Characteristic zero(1, 2, {0}, {0});
  const ThetaValue t = theta_constant(tau, zero);
  const double exact = std::pow(kPi, 0.25) / std::tgamma(0.75);
  CHECK(std::abs(t.value - exact) < 1e-14);
  CHECK(t.tail_bound <= 1e-12);
  CHECK(std::abs(t.value - 1.0864348112133080) < 1e-14);
}

TEST_CASE("theta agrees with naive summation within its tail bound") {
  std::mt19937_64 rng(5);
  for (int g = 1; g <= 3; ++g) {
    const int radius = g == 3 ? 7 : 12;
    for (int trial = 0; trial < 6; ++trial) {
      const PeriodMatrix tau = random_period_matrix(g, rng);
      const ComplexVector z = random_point(tau, rng);
      for (int n : {2, 3}) {
        const auto chars = enumerate(g, n);
        for (std::size_t k = 0; k < chars.size(); k += g == 3 ? 7 : 1) {
          const ThetaValue t = theta(tau, z, chars[k]);
          const Complex ref = naive_theta(tau, z, chars[k], radius);
          CHECK(std::abs(t.value - ref) <= t.tail_bound + 1e-11 * (1.0 + std::abs(ref)));
        }
      }
    }
  }
}

TEST_CASE("quasi-periodicity") {
  std::mt19937_64 rng(9);
  const int g = 2;
  const PeriodMatrix tau = random_period_matrix(g, rng);
  const ComplexVector z = random_point(tau, rng);
  const Characteristic c(g, 2, {1, 0}, {1, 1});
  const Eigen::Vector2d m(2.0, -1.0);
  const Complex base = theta(tau, z, c).value;

  // z + m: phase exp(2 pi i delta.m)
  const Complex shifted = theta(tau, z + m.cast<Complex>(), c).value;
  const double dm = c.delta(0) * m(0) + c.delta(1) * m(1);
  CHECK(std::abs(shifted - std::exp(Complex(0.0, 2.0 * kPi * dm)) * base) < 1e-10 * std::abs(base));

  // z + tau m: exp(-pi i m.tau m - 2 pi i m.(z + eps))
  const ComplexVector tm = tau.tau() * m.cast<Complex>();
  Complex mtm = m.cast<Complex>().dot(tm);
  Complex mz = 0.0;
  for (int i = 0; i < g; ++i) mz += m(i) * (z(i) + c.epsilon(i));
  const Complex factor = std::exp(Complex(0.0, -1.0) * kPi * mtm - Complex(0.0, 2.0) * kPi * mz);
  const Complex moved = theta(tau, z + tm, c).value;
  CHECK(std::abs(moved - factor * base) < 1e-9 * std::abs(factor * base));
}

TEST_CASE("odd characteristics vanish at the origin") {
  std::mt19937_64 rng(3);
  for (int g = 1; g <= 3; ++g) {
    const PeriodMatrix tau = random_period_matrix(g, rng);
    for (const auto& c : enumerate(g, 2))
      if (parity(c) == Parity::odd) CHECK(std::abs(theta_constant(tau, c).value) < 1e-13);
  }
}

TEST_CASE("shell counts") {
  CHECK(shell_count(1, 0) == 1);
  CHECK(shell_count(1, 3) == 2);
  CHECK(shell_count(2, 1) == 8);
  CHECK(shell_count(3, 2) == 125 - 27);
}

TEST_CASE("errors") {
  const PeriodMatrix flat = PeriodMatrix::diagonal({Complex(0.0, 1e-3)});
  ThetaOptions tight;
  tight.tol = 1e-15;
  tight.radius_cap = 2;
  CHECK_THROWS_AS(theta_constant(flat, Characteristic(1, 2, {0}, {0}), tight), ConvergenceError);

  const PeriodMatrix tau = PeriodMatrix::diagonal({Complex(0.0, 1.0), Complex(0.0, 1.0)});
  CHECK_THROWS_AS(theta(tau, ComplexVector::Zero(3), Characteristic(2, 2, {0, 0}, {0, 0})), InputError);
  CHECK_THROWS_AS(theta_constant(tau, Characteristic(1, 2, {0}, {0})), InputError);
}

TEST_CASE("period matrix validation") {
  using nlohmann::json;
  CHECK_NOTHROW(PeriodMatrix::from_json(json::parse(R"({"g":1,"re":[[0.2]],"im":[[1.0]]})")));
  CHECK_THROWS_AS(PeriodMatrix::from_json(json::parse(R"({"g":1,"re":[[0.2]],"im":[[-1.0]]})")), InputError);
  CHECK_THROWS_AS(PeriodMatrix::from_json(json::parse(R"({"g":2,"re":[[0,1],[0,0]],"im":[[1,0],[0,1]]})")),
                  InputError);
  CHECK_THROWS_AS(PeriodMatrix::from_json(json::parse(R"({"g":2,"re":[[0,0]],"im":[[1,0],[0,1]]})")), InputError);
  CHECK_THROWS_AS(PeriodMatrix::from_json(json::parse(R"({"re":[[0]],"im":[[1]]})")), InputError);
  CHECK_THROWS_AS(PeriodMatrix::load("/nonexistent/tau.json"), InputError);

  const PeriodMatrix tau = PeriodMatrix::from_json(json::parse(R"({"g":2,"re":[[0.1,0.2],[0.2,0.3]],"im":[[1,0.1],[0.1,2]]})"));
  CHECK(PeriodMatrix::from_json(tau.to_json()).tau() == tau.tau());
  CHECK(tau.diagonal_blocks().size() == 1);
  CHECK(PeriodMatrix::diagonal({Complex(0, 1), Complex(0, 2)}).diagonal_blocks().size() == 2);

  std::mt19937_64 a(1), b(1);
  CHECK(random_period_matrix(3, a).tau() == random_period_matrix(3, b).tau());
}
