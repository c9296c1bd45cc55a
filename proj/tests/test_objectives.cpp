#include <cmath>
#include <random>

#include "doctest.h"
#include "greedy_opt/errors.hpp"
#include "greedy_opt/objective.hpp"
#include "greedy_opt/smoothness.hpp"

using namespace greedy_opt;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector out(v.size());
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Matrix four_samples() {
  Matrix x(4, 2);
  x << 1, 2, -1, 0.5, 0.3, -1, 2, 1;
  return x;
}

std::vector<ObjectivePtr> shipped() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Matrix x(20, 5);
  Vector y(20), lab(20);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 5; ++j) x(i, j) = normal(rng);
    y[i] = normal(rng);
    lab[i] = i % 3 == 0 ? 1.0 : -1.0;
  }
  return {quadratic_objective(vec({1, 2})), quadratic_objective(vec({0.5, -1, 2}), 3.0),
          p_power_objective(x, y, 1.5), p_power_objective(x, y, 2.0),
          logistic_objective(x, lab), logistic_objective(four_samples(),
                                                         vec({1, -1, 1, -1}))};
}
}  // namespace

TEST_CASE("quadratic examples") {
  const auto e = quadratic_objective(vec({1, 2}));
  CHECK(e->value(Vector::Zero(2)) == 2.5);
  CHECK(e->gradient(Vector::Zero(2)) == vec({-1, -2}));
  CHECK(e->value(vec({1, 2})) == 0.0);
  CHECK(e->gradient(vec({1, 2})) == Vector::Zero(2));
  CHECK(e->majorant().gamma() == 0.5);
  CHECK(e->majorant().q() == 2.0);
  REQUIRE(e->known_inf());
  CHECK(e->known_inf()->value == 0.0);
  CHECK(e->known_inf()->exact);
  CHECK(e->region_radius() ==
        doctest::Approx(std::sqrt(5.0) + std::sqrt(2.0 * 4.5)).epsilon(1e-15));
  CHECK_THROWS_AS(quadratic_objective(vec({1}), 0.0), ValidationError);
  CHECK_THROWS_AS(quadratic_objective(vec({1}), -1.0), ValidationError);
}

TEST_CASE("quadratic modulus is scale u^2 / 2") {
  const auto e = quadratic_objective(vec({1, -1, 3}), 4.0);
  CHECK(empirical_modulus(*e, 2.0, 0.5, 100, 2) ==
        doctest::Approx(4.0 * 0.25 / 2.0).epsilon(1e-12));
}

TEST_CASE("p-power examples") {
  Matrix one(1, 1);
  one << 1.0;
  const auto sq = p_power_objective(one, vec({0}), 2.0);
  CHECK(sq->value(vec({3})) == 4.5);
  CHECK(sq->gradient(vec({3}))[0] == 3.0);

  const auto zero = p_power_objective(one, vec({1}), 1.5);
  CHECK(zero->value(vec({1})) == 0.0);
  CHECK(zero->gradient(vec({1}))[0] == 0.0);

  const auto e = p_power_objective(one, vec({0}), 1.5);
  CHECK(e->value(vec({4})) == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  CHECK(e->gradient(vec({4}))[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e->majorant().q() == 1.5);
  CHECK(e->majorant().gamma() == doctest::Approx(std::pow(2.0, 0.5)));

  CHECK_THROWS_AS(p_power_objective(one, vec({0}), 2.5), ValidationError);
  CHECK_THROWS_AS(p_power_objective(one, vec({0}), 1.0), ValidationError);
}

TEST_CASE("logistic examples") {
  const auto e = logistic_objective(four_samples(), vec({1, -1, 1, -1}));
  // frozen oracle values
  CHECK(e->value(Vector::Zero(2)) ==
        doctest::Approx(2.772588722239781).epsilon(1e-15));
  const Vector g0 = e->gradient(Vector::Zero(2));
  CHECK(g0[0] == doctest::Approx(-0.15).epsilon(1e-15));
  CHECK(g0[1] == doctest::Approx(0.25).epsilon(1e-15));
  const Vector x = vec({0.5, -0.25});
  CHECK(e->value(x) == doctest::Approx(2.771734117351316514).epsilon(1e-14));
  const Vector g = e->gradient(x);
  CHECK(g[0] == doctest::Approx(0.3893185610505757900512825).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(0.2548136067299138509800021).epsilon(1e-14));
  CHECK(e->majorant().gamma() ==
        doctest::Approx((5.0 + 1.25 + 1.09 + 5.0) / 8.0).epsilon(1e-15));
  CHECK_FALSE(e->known_inf());

  Matrix x4(4, 2);
  x4 << 1, 0, 0, 1, -1, 0, 0, -1;
  const auto sep = logistic_objective(x4, vec({1, 1, 1, 1}));
  CHECK(sep->value(vec({0, 0})) == doctest::Approx(4.0 * std::log(2.0)));
  CHECK_THROWS_AS(logistic_objective(four_samples(), vec({1, 0, 1, -1})),
                  ValidationError);
}

TEST_CASE("logistic on separable data") {
  const auto e = logistic_objective(Matrix::Identity(2, 2), vec({1, 1}));
  // frozen oracle: 2 log(1 + e^-10)
  CHECK(e->value(vec({10, 10})) ==
        doctest::Approx(9.079779843372929e-05).epsilon(1e-14));
  CHECK(std::isinf(e->region_radius()));
}

TEST_CASE("shipped objectives: convexity, gradient, support inequality") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (const auto& e : shipped()) {
    const double r = std::min(e->region_radius(), 5.0);
    for (int k = 0; k < 200; ++k) {
      Vector x(e->dim()), y(e->dim());
      for (Eigen::Index i = 0; i < e->dim(); ++i) {
        x[i] = r * unit(rng) / std::sqrt(double(e->dim()));
        y[i] = r * unit(rng) / std::sqrt(double(e->dim()));
      }
      const double mid = e->value(0.5 * x + 0.5 * y);
      CHECK(mid <= 0.5 * e->value(x) + 0.5 * e->value(y) + 1e-10);
      CHECK(e->value(y) >= e->value(x) + e->gradient(x).dot(y - x) - 1e-9);
      if (k < 20) CHECK(finite_difference_gradient_check(*e, x, 1e-5, 1e-5));
    }
  }
}

TEST_CASE("shipped objectives: majorant dominates the sampled modulus") {
  for (const auto& e : shipped()) {
    const double r = e->region_radius();
    REQUIRE(std::isfinite(r));
    const SmoothnessWitness w =
        smoothness_witness(*e, r, {1e-3, 1e-2, 0.1, 0.5, 1.0}, 200, 17);
    CHECK(w.dominated());
  }
}

TEST_CASE("p-power region radius encloses the sublevel set") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal;
  Matrix x(12, 3);
  Vector y(12);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = normal(rng);
    y[i] = normal(rng);
  }
  const auto e = p_power_objective(x, y, 1.5);
  const double level = e->value(Vector::Zero(3)) + 2.0;
  const double r = e->region_radius();
  REQUIRE(std::isfinite(r));
  for (int k = 0; k < 200; ++k) {
    Vector d(3);
    for (int j = 0; j < 3; ++j) d[j] = normal(rng);
    d /= d.norm();
    CHECK(e->value(1.0001 * r * d) > level);
  }
}

TEST_CASE("with_known_inf and with_majorant copy") {
  const auto e = quadratic_objective(vec({1, 2}));
  const auto f = e->with_majorant(e->majorant().scaled(0.5));
  CHECK(f->majorant().gamma() == 0.25);
  CHECK(e->majorant().gamma() == 0.5);
  CHECK(f->value(Vector::Zero(2)) == 2.5);
  const auto g = e->with_known_inf({-1.0, Vector(), false});
  CHECK(g->known_inf()->value == -1.0);
}
