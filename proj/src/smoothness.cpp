#include "greedy_opt/smoothness.hpp"

#include <cmath>

#include "greedy_opt/errors.hpp"

namespace greedy_opt {

Vector sample_lp_ball(Eigen::Index n, double radius, const NormTag& norm,
                      Rng& rng) {
  // Barthe-Guedon-Mendelson-Naor: with y_i ~ density exp(-|t|^p) and
  // z ~ Exp(1), y / (||y||_p^p + z)^{1/p} is uniform in the unit ell_p ball.
  const double p = norm.p();
  std::gamma_distribution<double> gamma(1.0 / p, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::exponential_distribution<double> expo(1.0);
  Vector y(n);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::pow(gamma(rng), 1.0 / p);
    y[i] = coin(rng) ? mag : -mag;
    sum += std::pow(mag, p);
  }
  const double z = expo(rng);
  return (radius / std::pow(sum + z, 1.0 / p)) * y;
}

Vector random_unit_direction(Eigen::Index n, const NormTag& norm, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector y(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) y[i] = normal(rng);
  } while (y.isZero(0.0));
  return y / norm.norm(y);
}

namespace {

double half_second_difference(const Objective& e, const Vector& x,
                              const Vector& y, double u) {
  const double plus = checked_value(e, x + u * y);
  const double minus = checked_value(e, x - u * y);
  const double mid = checked_value(e, x);
  return 0.5 * std::abs(plus + minus - 2.0 * mid);
}

void validate_sampling(const Objective& e, double radius, double u,
                       int samples) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ValidationError("sampling radius must be positive and finite");
  if (!(u >= 0.0)) throw ValidationError("u must be nonnegative");
  if (u > e.majorant().domain_bound())
    throw ValidationError("u exceeds the majorant domain bound");
  if (samples < 1) throw ValidationError("need at least one sample");
}

}  // namespace

double empirical_modulus(const Objective& e, double radius, double u,
                         int samples, std::uint64_t seed) {
  validate_sampling(e, radius, u, samples);
  if (u == 0.0) return 0.0;
  Rng rng(seed);
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vector x = sample_lp_ball(e.dim(), radius, e.norm(), rng);
    const Vector y = random_unit_direction(e.dim(), e.norm(), rng);
    best = std::max(best, half_second_difference(e, x, y, u));
  }
  return best;
}

SmoothnessWitness smoothness_witness(const Objective& e, double radius,
                                     const std::vector<double>& us,
                                     int samples_per_u, std::uint64_t seed,
                                     double tol) {
  SmoothnessWitness w;
  Rng rng(seed);
  for (double u : us) {
    validate_sampling(e, radius, u, samples_per_u);
    const double mu = e.majorant()(u);
    double best = 0.0;
    for (int k = 0; k < samples_per_u; ++k) {
      Vector x = sample_lp_ball(e.dim(), radius, e.norm(), rng);
      Vector y = random_unit_direction(e.dim(), e.norm(), rng);
      const double rho = u == 0.0 ? 0.0 : half_second_difference(e, x, y, u);
      best = std::max(best, rho);
      if (rho > mu + tol)
        w.violations.push_back({std::move(x), std::move(y), u, rho, mu});
    }
    w.sampled_u.push_back(u);
    w.sampled_rho.push_back(best);
  }
  return w;
}

Lemma11Status lemma11_status(const Objective& e, const Vector& x,
                             const Vector& y, double u, const Majorant& mu,
                             double tol) {
  const double ynorm = e.norm().norm(y);
  if (!(ynorm > 0.0)) throw ValidationError("lemma11_check needs y != 0");
  if (e.norm().norm(x) > e.region_radius()) return Lemma11Status::NotApplicable;
  const double gap = checked_value(e, x + u * y) - checked_value(e, x) -
                     u * checked_gradient(e, x).dot(y);
  if (gap < -tol || gap > 2.0 * mu(u * ynorm) + tol)
    return Lemma11Status::Violated;
  return Lemma11Status::Holds;
}

bool lemma11_check(const Objective& e, const Vector& x, const Vector& y,
                   double u, const Majorant& mu, double tol) {
  return lemma11_status(e, x, y, u, mu, tol) != Lemma11Status::Violated;
}

bool finite_difference_gradient_check(const Objective& e, const Vector& x,
                                      const Vector& claimed_gradient, double h,
                                      double tol) {
  if (!(h > 0.0) || !(tol > 0.0))
    throw ValidationError("gradient check needs positive h and tol");
  if (claimed_gradient.size() != x.size())
    throw ValidationError("gradient dimension mismatch");
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = checked_value(e, probe);
    probe[i] = x[i] - h;
    const double down = checked_value(e, probe);
    probe[i] = x[i];
    if (std::abs((up - down) / (2.0 * h) - claimed_gradient[i]) > tol)
      return false;
  }
  return true;
}

bool finite_difference_gradient_check(const Objective& e, const Vector& x,
                                      double h, double tol) {
  return finite_difference_gradient_check(e, x, checked_gradient(e, x), h, tol);
}

}  // namespace greedy_opt
