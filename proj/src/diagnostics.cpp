#include "greedy_opt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "greedy_opt/errors.hpp"

namespace greedy_opt {

nlohmann::json RateFit::to_json() const {
  nlohmann::json j;
  j["status"] = status == Status::Ok ? "OK" : "DEGENERATE";
  j["window"] = {m_lo, m_hi};
  j["points"] = points;
  if (status == Status::Ok) {
    j["exponent"] = exponent;
    j["intercept"] = intercept;
    j["r_squared"] = r_squared;
  }
  if (converged_at) j["converged_at"] = *converged_at;
  return j;
}

RateFit fit_power_law(const std::vector<std::size_t>& ms,
                      const std::vector<double>& gaps) {
  if (ms.size() != gaps.size())
    throw ValidationError("fit_power_law: length mismatch");
  RateFit fit;
  if (ms.empty()) throw ValidationError("fit_power_law: no points");
  fit.m_lo = ms.front();
  fit.m_hi = ms.back();
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] < 1) throw ValidationError("fit_power_law: m must be >= 1");
    if (gaps[i] > 0.0) {
      xs.push_back(std::log(static_cast<double>(ms[i])));
      ys.push_back(std::log(gaps[i]));
    } else if (!fit.converged_at) {
      fit.converged_at = ms[i];
    }
  }
  fit.points = xs.size();
  if (xs.size() < 10) {
    if (fit.converged_at) {
      fit.status = RateFit::Status::Degenerate;
      return fit;
    }
    throw ValidationError("fit_rate needs at least 10 points with a_m > 0");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ValidationError("fit_rate: all points share one m");
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

RateFit fit_rate(const RunTrace& trace, std::optional<Window> window) {
  if (!trace.known_inf)
    throw ValidationError("fit_rate needs a known or reference infimum");
  if (trace.rows.empty()) throw ValidationError("fit_rate: empty trace");
  const std::size_t m_max = trace.rows.back().m;
  const Window w = window.value_or(Window{std::max<std::size_t>(1, m_max / 10), m_max});
  if (w.first < 1 || w.second <= w.first || w.second > m_max)
    throw ValidationError("fit_rate: window outside the trace");
  std::vector<std::size_t> ms;
  std::vector<double> gaps;
  for (const TraceRow& r : trace.rows) {
    if (r.m < w.first || r.m > w.second) continue;
    ms.push_back(r.m);
    gaps.push_back(*r.gap);
  }
  RateFit fit = fit_power_law(ms, gaps);
  fit.m_lo = w.first;
  fit.m_hi = w.second;
  return fit;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1: return "T3.1";
    case TheoremId::T4_1: return "T4.1";
    case TheoremId::T4_2: return "T4.2";
    case TheoremId::T5_1: return "T5.1";
    case TheoremId::T5_1E: return "T5.1E";
    case TheoremId::T5_2: return "T5.2";
    case TheoremId::T5_3: return "T5.3";
  }
  return "?";
}

TheoremId theorem_from_string(const std::string& s) {
  for (TheoremId id : {TheoremId::T3_1, TheoremId::T4_1, TheoremId::T4_2,
                       TheoremId::T5_1, TheoremId::T5_1E, TheoremId::T5_2,
                       TheoremId::T5_3})
    if (to_string(id) == s) return id;
  throw ValidationError("unknown theorem id: " + s);
}

nlohmann::json VerdictConfig::to_json() const {
  nlohmann::json j;
  j["algorithm"] = algorithm;
  j["sphere_dictionary"] = sphere_dictionary;
  j["region_bounded"] = region_bounded;
  if (t) j["t"] = *t;
  if (b) j["b"] = *b;
  if (gamma) j["gamma"] = *gamma;
  if (q) j["q"] = *q;
  if (coeffs) j["coefficients"] = coeffs->describe();
  if (r) j["r"] = *r;
  j["calibration"] = calibration;
  if (window) j["window"] = {window->first, window->second};
  if (c_override) j["C"] = *c_override;
  j["convergence_tol"] = convergence_tol;
  return j;
}

nlohmann::json TheoremVerdict::to_json() const {
  return {{"theorem", to_string(id)},
          {"preconditions_met", preconditions_met},
          {"reasons", reasons},
          {"bound_satisfied", bound_satisfied},
          {"details", details}};
}

CalibratedCheck calibrated_bound_check(const std::vector<std::size_t>& ms,
                                       const std::vector<double>& gaps,
                                       const std::vector<double>& bound,
                                       std::size_t calibration, Window window,
                                       std::optional<double> c_override) {
  if (ms.size() != gaps.size() || ms.size() != bound.size())
    throw ValidationError("calibrated_bound_check: length mismatch");
  CalibratedCheck out;
  double c = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (ms[i] <= calibration) c = std::max(c, gaps[i] / bound[i]);
  out.c = c_override.value_or(c);
  out.satisfied = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ms[i] < window.first || ms[i] > window.second) continue;
    ++out.checked;
    if (gaps[i] > out.c * bound[i] * (1.0 + 1e-12)) {
      out.satisfied = false;
      out.first_failure = ms[i];
      break;
    }
  }
  return out;
}

namespace {

struct Hypotheses {
  std::vector<std::string> reasons;
  void require(bool ok, const std::string& why) {
    if (!ok) reasons.push_back(why);
  }
};

bool is_fixed_coefficient_algorithm(const std::string& a) {
  return a == "GGA_FIXED" || a == "EGA" || a == "GBE";
}

// sum_k mu(c_k) for mu = gamma u^q, or nullopt if it diverges or is unknown.
std::optional<double> majorant_sum(const CoefficientSequence& cs, double gamma,
                                   double q) {
  switch (cs.kind()) {
    case CoefficientSequence::Kind::Power:
      if (cs.s() * q <= 1.0) return std::nullopt;
      return gamma * std::pow(cs.c(), q) * power_sum_upper_bound(cs.s() * q);
    case CoefficientSequence::Kind::Constant:
      if (cs.c() == 0.0) return 0.0;
      return std::nullopt;
    case CoefficientSequence::Kind::Explicit: {
      double sum = 0.0;
      for (double c : cs.values()) sum += gamma * std::pow(c, q);
      return sum;
    }
  }
  return std::nullopt;
}

bool coefficients_diverge(const CoefficientSequence& cs) {
  switch (cs.kind()) {
    case CoefficientSequence::Kind::Power:
      return cs.s() <= 1.0;
    case CoefficientSequence::Kind::Constant:
      return cs.c() > 0.0;
    case CoefficientSequence::Kind::Explicit:
      return false;
  }
  return false;
}

double max_coefficient(const CoefficientSequence& cs) {
  switch (cs.kind()) {
    case CoefficientSequence::Kind::Power:
    case CoefficientSequence::Kind::Constant:
      return cs.c();
    case CoefficientSequence::Kind::Explicit:
      return *std::max_element(cs.values().begin(), cs.values().end());
  }
  return 0.0;
}

void check_coefficient_conditions(Hypotheses& h, const VerdictConfig& cfg,
                                  nlohmann::json& details) {
  if (!cfg.coeffs) {
    h.require(false, "coefficient sequence not declared");
    return;
  }
  if (!cfg.gamma || !cfg.q) {
    h.require(false, "majorant gamma/q not declared");
    return;
  }
  h.require(max_coefficient(*cfg.coeffs) <= 1.0, "coefficients exceed 1");
  h.require(coefficients_diverge(*cfg.coeffs),
            "sum of c_k does not diverge");
  const auto sum = majorant_sum(*cfg.coeffs, *cfg.gamma, *cfg.q);
  if (sum) details["sum_mu_c"] = *sum;
  h.require(sum && *sum <= 1.0 + 1e-12, "sum of mu(c_k) exceeds 1");
}

}  // namespace

TheoremVerdict theorem_verdict(TheoremId id, const RunTrace& trace,
                               const VerdictConfig& cfg) {
  TheoremVerdict v;
  v.id = id;
  Hypotheses h;
  nlohmann::json details;
  details["config"] = cfg.to_json();
  h.require(trace.known_inf.has_value(), "no known infimum to measure gaps");
  h.require(!trace.rows.empty(), "empty trace");

  const bool q_ok = cfg.q && *cfg.q > 1.0 && *cfg.q <= 2.0;
  const bool b_ok = cfg.b && *cfg.b > 0.0 && *cfg.b < 1.0;
  const bool t_ok = cfg.t && *cfg.t > 0.0 && *cfg.t <= 1.0;
  bool convergence_only = false;
  // exponent of a power-law bound in m, when the bound has that shape
  std::optional<double> power_exponent;

  switch (id) {
    case TheoremId::T3_1:
      h.require(is_fixed_coefficient_algorithm(cfg.algorithm),
                "T3.1 covers GGA(t,C) and EGA(C)");
      h.require(t_ok || cfg.algorithm == "EGA", "t not in (0,1]");
      check_coefficient_conditions(h, cfg, details);
      convergence_only = true;
      break;
    case TheoremId::T4_1: {
      h.require(cfg.algorithm == "GGA_FIXED" || cfg.algorithm == "EGA",
                "T4.1 covers GGA(t,C_s) and EGA(C_s)");
      h.require(q_ok, "q not in (1,2]");
      h.require(t_ok, "t not in (0,1]");
      h.require(cfg.gamma.has_value(), "gamma not declared");
      const bool power = cfg.coeffs &&
                         cfg.coeffs->kind() == CoefficientSequence::Kind::Power;
      h.require(power, "coefficients are not of the form c k^{-s}");
      if (power && q_ok && t_ok && cfg.gamma) {
        const double t = *cfg.t, q = *cfg.q;
        const double s = (t + 1.0) / (t + q);
        details["s_expected"] = s;
        h.require(std::abs(cfg.coeffs->s() - s) <= 1e-12, "s mismatch");
        const double z = cfg.coeffs->s() * q > 1.0
                             ? power_sum_upper_bound(cfg.coeffs->s() * q)
                             : std::numeric_limits<double>::infinity();
        const double cond = *cfg.gamma * std::pow(cfg.coeffs->c(), q) * z;
        details["gamma_c_q_sum"] = cond;
        h.require(cond <= 1.0 + 1e-12, "gamma c^q sum k^{-sq} exceeds 1");
        const double r_max = t * (1.0 - s);
        const double r = cfg.r.value_or(0.9 * r_max);
        details["r"] = r;
        details["r_max"] = r_max;
        h.require(r > 0.0 && r < r_max, "r not in (0, t(1-s))");
        power_exponent = r;
      }
      break;
    }
    case TheoremId::T4_2: {
      h.require(cfg.algorithm == "GGA_FIXED" || cfg.algorithm == "EGA",
                "T4.2 covers GGA(t,C_s) and EGA(C_s)");
      h.require(cfg.sphere_dictionary, "T4.2 needs the sphere dictionary");
      h.require(cfg.region_bounded, "D_2 must be bounded");
      h.require(q_ok, "q not in (1,2]");
      h.require(cfg.gamma.has_value(), "gamma not declared");
      const bool power = cfg.coeffs &&
                         cfg.coeffs->kind() == CoefficientSequence::Kind::Power;
      h.require(power, "coefficients are not of the form c k^{-s}");
      if (power && q_ok && cfg.gamma) {
        const double s = cfg.coeffs->s();
        h.require(s > 0.0 && s < 1.0, "s = 1 - delta must be in (0,1)");
        const double z = s * *cfg.q > 1.0
                             ? power_sum_upper_bound(s * *cfg.q)
                             : std::numeric_limits<double>::infinity();
        const double cond = *cfg.gamma * std::pow(cfg.coeffs->c(), *cfg.q) * z;
        details["gamma_c_q_sum"] = cond;
        h.require(cond <= 1.0 + 1e-12, "gamma c^q sum k^{-sq} exceeds 1");
        power_exponent = s * (*cfg.q - 1.0);
      }
      break;
    }
    case TheoremId::T5_1:
      h.require(cfg.algorithm == "GGA_ADAPTIVE", "T5.1 covers GGA(t,b,mu)");
      h.require(t_ok, "t not in (0,1]");
      h.require(b_ok, "b not in (0,1)");
      convergence_only = true;
      break;
    case TheoremId::T5_1E:
      h.require(cfg.algorithm == "GEGA", "T5.1E covers GEGA(t)");
      h.require(t_ok, "t not in (0,1]");
      convergence_only = true;
      break;
    case TheoremId::T5_2:
    case TheoremId::T5_3: {
      h.require(cfg.algorithm == "GGA_ADAPTIVE", "covers GGA(tau,b,mu) only");
      h.require(b_ok, "b not in (0,1)");
      h.require(q_ok, "q not in (1,2]");
      if (id == TheoremId::T5_2) {
        bool monotone = true;
        for (std::size_t i = 1; i < trace.rows.size(); ++i)
          if (trace.rows[i].t > trace.rows[i - 1].t) monotone = false;
        h.require(monotone, "tau is not nonincreasing");
      } else {
        h.require(cfg.sphere_dictionary, "T5.3 needs the sphere dictionary");
        h.require(cfg.region_bounded, "D must be bounded");
      }
      break;
    }
  }

  v.reasons = h.reasons;
  v.preconditions_met = h.reasons.empty();
  if (!trace.known_inf || trace.rows.empty()) {
    v.details = details;
    return v;
  }

  std::vector<std::size_t> ms;
  std::vector<double> gaps;
  for (const TraceRow& r : trace.rows) {
    ms.push_back(r.m);
    gaps.push_back(*r.gap);
  }
  details["final_gap"] = gaps.back();
  details["iterations"] = ms.back();

  if (convergence_only) {
    details["convergence_tol"] = cfg.convergence_tol;
    v.bound_satisfied = gaps.back() <= cfg.convergence_tol;
    v.details = details;
    return v;
  }

  std::vector<double> bound(ms.size());
  if (power_exponent) {
    for (std::size_t i = 0; i < ms.size(); ++i)
      bound[i] = std::pow(static_cast<double>(ms[i]), -*power_exponent);
    details["bound"] = "m^-" + std::to_string(*power_exponent);
  } else if ((id == TheoremId::T5_2 || id == TheoremId::T5_3) && q_ok && b_ok) {
    const double q = *cfg.q, b = *cfg.b;
    const double p = q / (q - 1.0);
    double acc = 1.0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const double t = trace.rows[i].t;
      acc += std::pow(t, p);
      const double e = id == TheoremId::T5_2
                           ? -t * (1.0 - b) * (q - 1.0) / (q + t * (1.0 - b))
                           : 1.0 - q;
      bound[i] = std::pow(acc, e);
    }
    details["bound"] = id == TheoremId::T5_2
                           ? "(1+sum t_k^p)^(-t_m(1-b)(q-1)/(q+t_m(1-b)))"
                           : "(1+sum t_k^p)^(1-q)";
  } else {
    v.details = details;
    return v;
  }

  const Window w = cfg.window.value_or(Window{cfg.calibration, ms.back()});
  const CalibratedCheck check = calibrated_bound_check(
      ms, gaps, bound, cfg.calibration, w, cfg.c_override);
  details["C"] = check.c;
  details["window"] = {w.first, w.second};
  details["checked_iterations"] = check.checked;
  if (check.first_failure) details["first_failure"] = *check.first_failure;
  v.bound_satisfied = check.satisfied;
  v.details = details;
  return v;
}

nlohmann::json Lemma21Report::to_json() const {
  if (empty) return {{"empty", true}};
  return {{"empty", false},
          {"heuristic", "growth classified from the last decade of partial sums"},
          {"sum_c_final", partial_sum_c.back()},
          {"sum_c_growth", sum_c_growth},
          {"sum_c_ed_final", partial_sum_c_ed.back()},
          {"sum_c_ed_growth", sum_c_ed_growth},
          {"min_s_times_ed", min_s_times_ed},
          {"argmin_s_times_ed", argmin_s_times_ed},
          {"tail_min_decreasing", tail_min_decreasing}};
}

namespace {

// Share of the final partial sum accumulated over the last decade of
// iterations (m in (M/10, M]). Divergent sums keep a sizeable share
// (about ln 10 / ln M for the harmonic series); convergent ones do not.
std::string classify_growth(const std::vector<double>& partial) {
  const std::size_t big_m = partial.size();
  if (big_m < 10) return "insufficient-data";
  const double last = partial.back();
  const double earlier = partial[big_m / 10 - 1];
  if (last == 0.0) return "bounded-looking";
  const double share = (last - earlier) / std::abs(last);
  return share > 0.05 ? "diverging" : "bounded-looking";
}

}  // namespace

Lemma21Report lemma21_diagnostics(const RunTrace& trace) {
  Lemma21Report rep;
  if (trace.rows.empty()) return rep;
  rep.empty = false;
  for (const TraceRow& r : trace.rows) {
    rep.partial_sum_c.push_back(r.sum_c);
    rep.partial_sum_c_ed.push_back(r.sum_c_ed);
    rep.s_times_ed.push_back(r.sum_c * r.e_d);
  }
  rep.sum_c_growth = classify_growth(rep.partial_sum_c);
  rep.sum_c_ed_growth = classify_growth(rep.partial_sum_c_ed);
  const auto it = std::min_element(rep.s_times_ed.begin(), rep.s_times_ed.end());
  rep.min_s_times_ed = *it;
  rep.argmin_s_times_ed = trace.rows[it - rep.s_times_ed.begin()].m;
  const std::size_t mid = rep.s_times_ed.size() / 2;
  const double head_min =
      *std::min_element(rep.s_times_ed.begin(), rep.s_times_ed.begin() + mid + 1);
  rep.tail_min_decreasing = rep.min_s_times_ed < head_min;
  return rep;
}

}  // namespace greedy_opt
