#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "greedy_opt/errors.hpp"
#include "greedy_opt/linalg.hpp"
#include "greedy_opt/majorant.hpp"
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
}  // namespace

TEST_CASE("dual_norm examples") {
  CHECK(dual_norm(vec({3, 4}), NormTag::euclidean()) == 5.0);
  CHECK(dual_norm(Vector::Zero(3), NormTag::lp(1.5)) == 0.0);
  CHECK(dual_norm(Vector::Zero(3), NormTag::lp(4.0)) == 0.0);
  // frozen oracle: sqrt(5)
  CHECK(dual_norm(vec({1, 2}), NormTag::euclidean()) ==
        doctest::Approx(2.2360679774997897).epsilon(1e-15));
}

TEST_CASE("dual_norm rejects non-finite input") {
  Vector v = vec({1, std::numeric_limits<double>::quiet_NaN()});
  CHECK_THROWS_AS(dual_norm(v, NormTag::euclidean()), ValidationError);
}

TEST_CASE("NormTag dual exponent and range") {
  for (double p : {1.1, 1.5, 2.0, 3.0, 7.25}) {
    const NormTag n = NormTag::lp(p);
    const double expect = p / (p - 1.0);
    CHECK(std::abs(n.dual_p() - expect) <= 1e-15 * expect);
  }
  CHECK_THROWS_AS(NormTag::lp(1.0), ValidationError);
  CHECK_THROWS_AS(NormTag::lp(0.5), ValidationError);
  CHECK_THROWS_AS(NormTag::lp(std::numeric_limits<double>::infinity()),
                  ValidationError);
  CHECK(NormTag::lp(2.0).is_euclidean());
}

TEST_CASE("Hoelder inequality on random pairs") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  for (double p : {1.2, 1.5, 2.0, 3.0, 6.0}) {
    const NormTag norm = NormTag::lp(p);
    for (int k = 0; k < 500; ++k) {
      Vector v(8), w(8);
      for (int i = 0; i < 8; ++i) {
        v[i] = normal(rng);
        w[i] = normal(rng);
      }
      const double rhs = dual_norm(v, norm) * norm.norm(w);
      CHECK(v.dot(w) <= rhs * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("lp_norm is overflow safe") {
  Vector v = vec({1e200, 1e200});
  CHECK(lp_norm(v, 2.0) == doctest::Approx(std::sqrt(2.0) * 1e200));
}

TEST_CASE("power majorant") {
  const Majorant mu = Majorant::power(0.5, 2.0);
  CHECK(mu(0.0) == 0.0);
  CHECK(mu(2.0) == 2.0);
  CHECK(mu.ratio(0.0) == 0.0);
  CHECK(mu.ratio(2.0) == 1.0);
  CHECK(ratio_is_monotone(mu, 1e-8, 1e4));
  CHECK(ratio_is_monotone(Majorant::power(3.0, 1.1), 1e-8, 1e4));
  CHECK_THROWS_AS(Majorant::power(0.0, 2.0), ValidationError);
  CHECK_THROWS_AS(Majorant::power(1.0, 2.5), ValidationError);
  CHECK_THROWS_AS(Majorant::power(1.0, 1.0), ValidationError);
}

TEST_CASE("tabulated majorant monotonicity sampling") {
  const Majorant good = Majorant::tabulated(
      [](double u) { return u * u * u / (1.0 + u); }, 10.0, "u^3/(1+u)");
  CHECK(ratio_is_monotone(good, 1e-4, 10.0));
  const Majorant bad =
      Majorant::tabulated([](double u) { return std::sqrt(u); }, 10.0, "sqrt");
  CHECK_FALSE(ratio_is_monotone(bad, 1e-4, 10.0));
}

TEST_CASE("empirical_modulus of the half squared norm is u^2/2") {
  const auto e = quadratic_objective(Vector::Zero(4));
  for (double u : {0.1, 0.5, 1.0, 2.0})
    CHECK(empirical_modulus(*e, 3.0, u, 200, 1) ==
          doctest::Approx(u * u / 2.0).epsilon(1e-12));
  CHECK(empirical_modulus(*e, 3.0, 0.0, 10, 1) == 0.0);
}

TEST_CASE("empirical_modulus of a linear function is zero") {
  const auto e = linear_objective(vec({1.0, -2.0, 0.5}));
  for (double u : {0.0, 0.3, 5.0})
    CHECK(empirical_modulus(*e, 2.0, u, 100, 3) <= 1e-14);
}

TEST_CASE("empirical_modulus is deterministic and validates input") {
  const auto e = quadratic_objective(vec({1, 2}), 3.0);
  CHECK(empirical_modulus(*e, 2.0, 0.7, 50, 9) ==
        empirical_modulus(*e, 2.0, 0.7, 50, 9));
  CHECK_THROWS_AS(empirical_modulus(*e, 2.0, 0.7, 0, 9), ValidationError);
}

TEST_CASE("lemma11_check examples") {
  const auto e = quadratic_objective(vec({1, 2}));
  const Majorant mu = Majorant::power(0.5, 2.0);
  const Vector x = Vector::Zero(2);
  const Vector y = vec({0, 1});
  CHECK(lemma11_check(*e, x, y, 1.0, mu));
  CHECK(lemma11_check(*e, x, y, 0.0, mu));
  // zero majorant on a strictly convex function fails the upper bound
  const Majorant zero = Majorant::tabulated([](double) { return 0.0; }, 1e9, "0");
  CHECK_FALSE(lemma11_check(*e, x, y, 1.0, zero));
  // points beyond the declared region are not applicable
  const Vector far = Vector::Constant(2, 1e6);
  CHECK(lemma11_status(*e, far, y, 1.0, mu) == Lemma11Status::NotApplicable);
}

TEST_CASE("finite difference gradient checks") {
  const auto q = quadratic_objective(Vector::Zero(2));
  CHECK(finite_difference_gradient_check(*q, vec({1, 2}), 1e-5, 1e-8));

  Matrix x(4, 2);
  x << 1, 2, -1, 0.5, 0.3, -1, 2, 1;
  const auto lg = logistic_objective(x, vec({1, -1, 1, -1}));
  CHECK(finite_difference_gradient_check(*lg, Vector::Zero(2), 1e-5, 1e-6));

  Vector wrong = lg->gradient(Vector::Zero(2));
  wrong[0] += 1e-3;
  CHECK_FALSE(
      finite_difference_gradient_check(*lg, Vector::Zero(2), wrong, 1e-5, 1e-6));
}

TEST_CASE("lp ball sampling stays in the ball") {
  Rng rng(5);
  for (double p : {1.3, 2.0, 4.0}) {
    const NormTag norm = NormTag::lp(p);
    for (int k = 0; k < 200; ++k) {
      CHECK(norm.norm(sample_lp_ball(6, 2.5, norm, rng)) <= 2.5 * (1 + 1e-12));
      CHECK(norm.norm(random_unit_direction(6, norm, rng)) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}
