#include <cmath>

#include "greedy_opt/errors.hpp"
#include "greedy_opt/greedy.hpp"

namespace greedy_opt {

std::optional<double> solve_stepsize_bisection(const Majorant& mu,
                                               double slope, double c_max) {
  if (!(slope > 0.0) || !std::isfinite(slope))
    throw ValidationError("step-size slope must be positive");
  if (!(c_max > 0.0)) throw ValidationError("c_max must be positive");
  double hi = c_max;
  if (!std::isfinite(hi)) {
    hi = 1.0;
    while (mu.ratio(hi) < slope) {
      hi *= 2.0;
      if (!std::isfinite(hi)) return std::nullopt;
    }
  } else if (mu.ratio(hi) < slope) {
    return std::nullopt;
  }
  // mu(c)/c is nondecreasing: keep ratio(lo) < slope <= ratio(hi) and halve
  // until the bracket cannot shrink further.
  double lo = 0.0;
  for (int it = 0; it < 4000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (mu.ratio(mid) < slope ? lo : hi) = mid;
  }
  return hi;
}

std::optional<double> solve_stepsize(const Majorant& mu, double slope,
                                     double c_max) {
  if (!(slope > 0.0) || !std::isfinite(slope))
    throw ValidationError("step-size slope must be positive");
  if (mu.is_power()) {
    const double c = std::pow(slope / mu.gamma(), 1.0 / (mu.q() - 1.0));
    if (c > c_max) return std::nullopt;
    return c;
  }
  return solve_stepsize_bisection(mu, slope, c_max);
}

LineSearchResult line_search_exact(const Objective& e, const Vector& g,
                                   const Vector& phi, double bound,
                                   double tol) {
  if (!(bound > 0.0)) throw ValidationError("line search bound must be > 0");
  if (!(tol > 0.0)) throw ValidationError("line search tol must be > 0");
  const double e0 = checked_value(e, g);
  const double d0 = checked_gradient(e, g).dot(phi);
  if (d0 == 0.0) return {0.0, e0, false};

  // h(s) = d/dc E(G + c phi) at c = dir * s, increasing in s with h(0) < 0
  const double dir = d0 < 0.0 ? 1.0 : -1.0;
  auto h = [&](double s) {
    return dir * checked_gradient(e, g + (dir * s) * phi).dot(phi);
  };

  LineSearchResult out;
  double lo = 0.0, h_lo = dir * d0;
  double hi = std::min(1.0, bound);
  double h_hi = h(hi);
  while (h_hi < 0.0) {
    if (hi >= bound) {
      out.c = dir * bound;
      out.value = checked_value(e, g + out.c * phi);
      out.clamped = true;
      if (out.value > e0) out = {0.0, e0, true};
      return out;
    }
    lo = hi;
    h_lo = h_hi;
    hi = std::min(2.0 * hi, bound);
    h_hi = h(hi);
  }

  double s = hi;
  if (h_hi != 0.0) {
    bool exact = false;
    while (hi - lo > tol) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      const double h_mid = h(mid);
      if (h_mid == 0.0) {
        s = mid;
        exact = true;
        break;
      }
      if (h_mid < 0.0) {
        lo = mid;
        h_lo = h_mid;
      } else {
        hi = mid;
        h_hi = h_mid;
      }
    }
    if (!exact) {
      // secant on the final bracket; exact for quadratics
      s = lo - h_lo * (hi - lo) / (h_hi - h_lo);
      if (!(s >= lo && s <= hi)) s = lo + 0.5 * (hi - lo);
    }
  }
  out.c = dir * s;
  out.value = checked_value(e, g + out.c * phi);
  // near a minimizer the decrease falls below one ulp of E; the derivative
  // bracket still certifies the step, so only reject real increases
  const double noise = 1e-12 * (1.0 + std::abs(e0));
  if (out.value > e0 + noise) out = {0.0, e0, false};
  return out;
}

}  // namespace greedy_opt
