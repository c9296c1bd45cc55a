#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greedy_opt/greedy.hpp"
#include "json.hpp"

namespace greedy_opt {

struct RateFit {
  enum class Status { Ok, Degenerate };
  Status status = Status::Ok;
  double exponent = 0.0;  // slope of log a_m against log m
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t m_lo = 0;
  std::size_t m_hi = 0;
  std::size_t points = 0;
  /// first m in the window with a_m <= 0, for degenerate fits
  std::optional<std::size_t> converged_at;

  nlohmann::json to_json() const;
};

using Window = std::pair<std::size_t, std::size_t>;

/// Least-squares line through (log m, log a_m) for the points with a_m > 0.
/// Needs at least 10 such points unless the gaps reach zero inside the
/// window, in which case the fit is Degenerate.
RateFit fit_power_law(const std::vector<std::size_t>& ms,
                      const std::vector<double>& gaps);

/// Default window is [m_max / 10, m_max].
RateFit fit_rate(const RunTrace& trace, std::optional<Window> window = {});

enum class TheoremId { T3_1, T4_1, T4_2, T5_1, T5_1E, T5_2, T5_3 };

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

/// What the run was built to satisfy. Unset fields count as unverifiable
/// hypotheses.
struct VerdictConfig {
  std::string algorithm;  // GBE, EGA, GGA_FIXED, GGA_ADAPTIVE, GEGA
  bool sphere_dictionary = false;
  bool region_bounded = true;
  std::optional<double> t;
  std::optional<double> b;
  std::optional<double> gamma;
  std::optional<double> q;
  std::optional<CoefficientSequence> coeffs;
  /// exponent tested for T4.1; defaults to 0.9 * t (1 - s)
  std::optional<double> r;
  std::size_t calibration = 10;
  /// iterations tested; defaults to [calibration, m_max]
  std::optional<Window> window;
  /// replaces the calibrated constant when set
  std::optional<double> c_override;
  /// gap threshold for the convergence theorems (T3.1, T5.1, T5.1E)
  double convergence_tol = 1e-2;

  nlohmann::json to_json() const;
};

struct TheoremVerdict {
  TheoremId id = TheoremId::T3_1;
  bool preconditions_met = false;
  std::vector<std::string> reasons;
  bool bound_satisfied = false;
  nlohmann::json details;

  nlohmann::json to_json() const;
};

/// Smallest C with a_m <= C bound_m on rows m <= calibration, then checks
/// a_m <= C bound_m (1 + 1e-12 relative rounding slack) on the window.
struct CalibratedCheck {
  double c = 0.0;
  bool satisfied = false;
  std::size_t checked = 0;
  std::optional<std::size_t> first_failure;
};

CalibratedCheck calibrated_bound_check(const std::vector<std::size_t>& ms,
                                       const std::vector<double>& gaps,
                                       const std::vector<double>& bound,
                                       std::size_t calibration, Window window,
                                       std::optional<double> c_override = {});

TheoremVerdict theorem_verdict(TheoremId id, const RunTrace& trace,
                               const VerdictConfig& config);

struct Lemma21Report {
  bool empty = true;
  std::vector<double> partial_sum_c;
  std::vector<double> partial_sum_c_ed;
  /// heuristic: "diverging", "bounded-looking" or "insufficient-data"
  std::string sum_c_growth;
  std::string sum_c_ed_growth;
  std::vector<double> s_times_ed;  // s_n E_D(G_n)
  double min_s_times_ed = 0.0;
  std::size_t argmin_s_times_ed = 0;
  /// running minimum of s_n E_D(G_n) over the second half of the trace is
  /// below its value at the midpoint
  bool tail_min_decreasing = false;

  nlohmann::json to_json() const;
};

Lemma21Report lemma21_diagnostics(const RunTrace& trace);

}  // namespace greedy_opt
