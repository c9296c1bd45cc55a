#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "greedy_opt/majorant.hpp"
#include "greedy_opt/objective.hpp"

namespace greedy_opt {

using Rng = std::mt19937_64;

/// Uniform sample from the ell_p ball of the given radius (generalized
/// Gaussian construction, no rejection).
Vector sample_lp_ball(Eigen::Index n, double radius, const NormTag& norm,
                      Rng& rng);

/// Standard normal vector rescaled to unit norm.
Vector random_unit_direction(Eigen::Index n, const NormTag& norm, Rng& rng);

/// Lower estimate of rho(E, S, u) over S = ball of radius `radius`: the max
/// of |E(x+uy) + E(x-uy) - 2E(x)| / 2 over `samples` random (x, y).
double empirical_modulus(const Objective& e, double radius, double u,
                         int samples, std::uint64_t seed);

struct SmoothnessWitness {
  struct Violation {
    Vector x;
    Vector y;
    double u = 0.0;
    double rho = 0.0;
    double mu = 0.0;
  };
  std::vector<double> sampled_u;
  std::vector<double> sampled_rho;
  std::vector<Violation> violations;

  bool dominated() const noexcept { return violations.empty(); }
};

/// Estimates rho at each u and records every sampled pair whose second
/// difference exceeds mu(u) + tol.
SmoothnessWitness smoothness_witness(const Objective& e, double radius,
                                     const std::vector<double>& us,
                                     int samples_per_u, std::uint64_t seed,
                                     double tol = 1e-12);

enum class Lemma11Status { Holds, Violated, NotApplicable };

/// Checks 0 <= E(x+uy) - E(x) - u<E'(x), y> <= 2 mu(u ||y||) within tol.
/// x outside the objective's region yields NotApplicable.
Lemma11Status lemma11_status(const Objective& e, const Vector& x,
                             const Vector& y, double u, const Majorant& mu,
                             double tol = 1e-9);

bool lemma11_check(const Objective& e, const Vector& x, const Vector& y,
                   double u, const Majorant& mu, double tol = 1e-9);

/// Compares each gradient coordinate against a central difference.
bool finite_difference_gradient_check(const Objective& e, const Vector& x,
                                      double h = 1e-5, double tol = 1e-6);

/// Same check with an externally supplied gradient (for fault injection).
bool finite_difference_gradient_check(const Objective& e, const Vector& x,
                                      const Vector& claimed_gradient,
                                      double h, double tol);

}  // namespace greedy_opt
