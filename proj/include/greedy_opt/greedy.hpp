#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "greedy_opt/dictionary.hpp"
#include "greedy_opt/majorant.hpp"
#include "greedy_opt/objective.hpp"
#include "json.hpp"

namespace greedy_opt {

// ---------------------------------------------------------------------------
// Parameter sequences

/// Weakness parameters t_1, t_2, ... in (0, 1]. Indices are 1-based. An
/// explicit list repeats its last value once exhausted.
class WeaknessSequence {
 public:
  static WeaknessSequence constant(double t);
  static WeaknessSequence explicit_list(std::vector<double> values);
  static WeaknessSequence formula(std::function<double(std::size_t)> fn,
                                  std::string label);

  double at(std::size_t k) const;
  /// t_1 >= t_2 >= ... >= t_m.
  bool nonincreasing_up_to(std::size_t m) const;
  bool is_constant() const noexcept { return kind_ == Kind::Constant; }
  nlohmann::json describe() const;

 private:
  enum class Kind { Constant, Explicit, Formula };
  Kind kind_ = Kind::Constant;
  double t_ = 1.0;
  std::vector<double> values_;
  std::function<double(std::size_t)> fn_;
  std::string label_;
};

/// Prescribed coefficients c_1, c_2, ...: an explicit list, a constant, or
/// the power law c * k^{-s}.
class CoefficientSequence {
 public:
  enum class Kind { Explicit, Constant, Power };

  static CoefficientSequence explicit_list(std::vector<double> values);
  static CoefficientSequence constant(double c);
  static CoefficientSequence power(double c, double s);

  Kind kind() const noexcept { return kind_; }
  double c() const noexcept { return c_; }
  double s() const noexcept { return s_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// nullopt once an explicit list runs out.
  std::optional<double> at(std::size_t k) const;
  nlohmann::json describe() const;

 private:
  Kind kind_ = Kind::Constant;
  double c_ = 1.0;
  double s_ = 0.0;
  std::vector<double> values_;
};

/// Upper bound on sum_{k>=1} k^{-a} for a > 1: 10^6 exact terms plus the
/// integral tail N^{1-a} / (a - 1).
double power_sum_upper_bound(double a);

struct CsSequence {
  CoefficientSequence coeffs;
  double s = 0.0;
  double c = 0.0;
  double zeta_bound = 0.0;
};

/// s = (t+1)/(t+q) and the largest c with gamma c^q sum k^{-sq} <= 1.
CsSequence make_cs_sequence(double t, double q, double gamma);

// ---------------------------------------------------------------------------
// Scalar solvers

/// Solves mu(c)/c = slope. Power majorants use the closed form; others are
/// bisected on (0, c_max]. nullopt when mu(c)/c < slope on the whole range.
std::optional<double> solve_stepsize(const Majorant& mu, double slope,
                                     double c_max);

/// Bisection path of solve_stepsize, usable for any majorant.
std::optional<double> solve_stepsize_bisection(const Majorant& mu,
                                               double slope, double c_max);

struct LineSearchResult {
  double c = 0.0;
  double value = 0.0;
  bool clamped = false;
};

/// Minimizes c -> E(G + c phi) over the real line by bracketing the root of
/// the directional derivative (doubling out from [0, 1] up to |c| <= bound)
/// and bisecting to width tol.
LineSearchResult line_search_exact(const Objective& e, const Vector& g,
                                   const Vector& phi, double bound,
                                   double tol = 1e-12);

// ---------------------------------------------------------------------------
// Runs

struct StopRule {
  /// Stop once the dual norm of E'(G) is at most this; nullopt means the
  /// default 1e-12 * (1 + |E(0)|).
  std::optional<double> grad_tol;
  std::size_t max_iter = 1000;
  std::optional<double> target_gap;
};

struct ExpansionState {
  Vector g;
  std::vector<double> coeffs;
  std::vector<Atom> atoms;
  double a_m = 0.0;

  std::size_t m() const noexcept { return coeffs.size(); }
  /// Sum c_j resolve(phi_j), rebuilt from the history.
  Vector recompute(const Dictionary& dict) const;
};

/// Calls fn(k, G_k, A_k) for k = 0..m by replaying the expansion.
void replay(const ExpansionState& state, const Dictionary& dict,
            const std::function<void(std::size_t, const Vector&, double)>& fn);

enum TraceFlag : unsigned {
  kFlagFallbackStep = 1u << 0,  // step equation had no root, c_m = 1
  kFlagClamped = 1u << 1,       // line search hit its bound
  kFlagNoProgress = 1u << 2,    // G_m == G_{m-1}
};

std::string flags_to_string(unsigned flags);

struct TraceRow {
  std::size_t m = 0;
  double e = 0.0;
  std::optional<double> gap;
  double e_d = 0.0;  // E_D(G_m)
  double c = 0.0;
  long atom = -1;  // dictionary index, -1 for sphere atoms
  int sign = 1;
  double a_m = 0.0;
  double sum_c = 0.0;
  double sum_c_ed = 0.0;
  unsigned flags = 0;
  // not serialized
  double t = 1.0;
  double pairing = 0.0;  // <-E'(G_{m-1}), phi_m>
};

enum class StopStatus { Gradient, MaxIter, TargetGap, CoefficientsExhausted };

std::string to_string(StopStatus s);

struct RunTrace {
  std::string algorithm;
  double e0 = 0.0;
  double e_d0 = 0.0;
  std::optional<double> known_inf;
  std::vector<TraceRow> rows;
  StopStatus status = StopStatus::MaxIter;
  ExpansionState state;

  std::size_t size() const noexcept { return rows.size(); }
  /// E_D(G_{m-1}) for a 1-based m.
  double e_d_before(std::size_t m) const;
  double e_before(std::size_t m) const;
};

struct RunOptions {
  StopRule stop;
  SelectMode mode = SelectMode::Argmax;
  /// Absolute slack on the energy inequality checked by run_gga_adaptive.
  double energy_slack = 1e-10;
  double line_tol = 1e-12;
};

using CoefficientRule = std::function<double(std::size_t)>;

/// Gradient based expansion with a caller-supplied coefficient rule.
RunTrace run_gbe(const Objective& e, const Dictionary& dict,
                 const WeaknessSequence& tau, const CoefficientRule& coeff_rule,
                 const RunOptions& opts);

/// E-greedy algorithm: phi_m minimizes E(G_{m-1} + c_m g). Finite
/// dictionaries only.
RunTrace run_ega(const Objective& e, const Dictionary& dict,
                 const CoefficientSequence& coeffs, const RunOptions& opts);

RunTrace run_gga_fixed(const Objective& e, const Dictionary& dict,
                       const WeaknessSequence& tau,
                       const CoefficientSequence& coeffs,
                       const RunOptions& opts);

/// Gradient greedy algorithm with c_m from mu(c) = (t_m b / 2) c E_D.
/// Throws MajorantViolation if E(G_m) > E(G_{m-1}) - t_m (1-b) c_m E_D.
RunTrace run_gga_adaptive(const Objective& e, const Dictionary& dict,
                          const WeaknessSequence& tau, double b,
                          const Majorant& mu, const RunOptions& opts);

/// Gradient E-greedy algorithm: c_m by exact line search along phi_m.
RunTrace run_gega(const Objective& e, const Dictionary& dict,
                  const WeaknessSequence& tau, const RunOptions& opts);

// ---------------------------------------------------------------------------
// Bound checks

struct Lemma31Result {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// false when f/A in A_1(D) could not be verified (general finite dict).
  bool membership_checked = false;
};

/// E_D(G) >= (E(G) - E(f)) / (A + A_k), at the point G with A_k = a_m.
/// Throws ValidationError if A <= 0 or if f/A is provably outside A_1(D).
Lemma31Result lemma31_bound(const Vector& g, double a_k, const Objective& e,
                            const Dictionary& dict, const Vector& f, double a);

Lemma31Result lemma31_bound(const ExpansionState& state, const Objective& e,
                            const Dictionary& dict, const Vector& f, double a);

/// a_m <= C m^{-alpha} for every m > burn_in. nullopt when the trace has
/// no infimum to measure gaps against.
std::optional<bool> check_rate_bound(const RunTrace& trace, double alpha,
                                     double c, std::size_t burn_in);

}  // namespace greedy_opt

namespace greedy_opt {

struct ReferenceSolution {
  KnownInfimum inf;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
};

/// Long GEGA run on the Euclidean unit sphere (steepest descent with exact
/// line search) until ||E'|| <= grad_tol. Results are cached per objective
/// description for the lifetime of the process.
ReferenceSolution reference_infimum(const Objective& e, double grad_tol = 1e-10,
                                    std::size_t max_iter = 200000);

}  // namespace greedy_opt
