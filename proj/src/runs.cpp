#include <cmath>
#include <limits>
#include <sstream>

#include "greedy_opt/errors.hpp"
#include "greedy_opt/greedy.hpp"

namespace greedy_opt {

Vector ExpansionState::recompute(const Dictionary& dict) const {
  Vector acc = Vector::Zero(g.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    acc += coeffs[j] * resolve(atoms[j], dict);
  return acc;
}

void replay(const ExpansionState& state, const Dictionary& dict,
            const std::function<void(std::size_t, const Vector&, double)>& fn) {
  Vector g = Vector::Zero(state.g.size());
  double a = 0.0;
  fn(0, g, a);
  for (std::size_t j = 0; j < state.coeffs.size(); ++j) {
    g += state.coeffs[j] * resolve(state.atoms[j], dict);
    a += std::abs(state.coeffs[j]);
    fn(j + 1, g, a);
  }
}

std::string flags_to_string(unsigned flags) {
  std::string out;
  auto add = [&](unsigned bit, const char* name) {
    if (!(flags & bit)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(kFlagFallbackStep, "FALLBACK_C1");
  add(kFlagClamped, "CLAMPED");
  add(kFlagNoProgress, "NO_PROGRESS");
  return out;
}

std::string to_string(StopStatus s) {
  switch (s) {
    case StopStatus::Gradient:
      return "STOPPED_GRADIENT";
    case StopStatus::MaxIter:
      return "MAX_ITER";
    case StopStatus::TargetGap:
      return "TARGET_GAP";
    case StopStatus::CoefficientsExhausted:
      return "COEFFICIENTS_EXHAUSTED";
  }
  return "UNKNOWN";
}

double RunTrace::e_d_before(std::size_t m) const {
  if (m == 0 || m > rows.size()) throw ValidationError("row index out of range");
  return m == 1 ? e_d0 : rows[m - 2].e_d;
}

double RunTrace::e_before(std::size_t m) const {
  if (m == 0 || m > rows.size()) throw ValidationError("row index out of range");
  return m == 1 ? e0 : rows[m - 2].e;
}

namespace {

struct StepChoice {
  Atom atom;
  double c = 0.0;
  double t = 1.0;
  double pairing = 0.0;
  unsigned flags = 0;
  bool exhausted = false;
};

struct StepContext {
  std::size_t m;
  const Vector& g;
  const Vector& grad;
  double e_prev;
  double e_d_prev;
};

using StepPolicy = std::function<StepChoice(const StepContext&)>;
using PostCheck =
    std::function<void(const StepContext&, const StepChoice&, double e_new)>;

void check_dimensions(const Objective& e, const Dictionary& dict) {
  if (const auto* f = std::get_if<FiniteDictionary>(&dict)) {
    if (f->dim() != e.dim()) {
      std::ostringstream os;
      os << "dictionary dimension " << f->dim() << " does not match objective "
         << "dimension " << e.dim();
      throw ValidationError(os.str());
    }
  }
}

RunTrace drive(const Objective& e, const Dictionary& dict,
               std::string algorithm, const RunOptions& opts,
               const StepPolicy& policy, const PostCheck& post = {}) {
  check_dimensions(e, dict);
  if (opts.stop.max_iter < 1) throw ValidationError("max_iter must be >= 1");
  const NormTag& norm = dictionary_norm(dict);

  RunTrace trace;
  trace.algorithm = std::move(algorithm);
  if (e.known_inf()) trace.known_inf = e.known_inf()->value;
  ExpansionState& state = trace.state;
  state.g = Vector::Zero(e.dim());

  Vector grad = checked_gradient(e, state.g);
  trace.e0 = checked_value(e, state.g);
  trace.e_d0 = e_d(-grad, dict).value;
  const double grad_tol =
      opts.stop.grad_tol.value_or(1e-12 * (1.0 + std::abs(trace.e0)));

  double e_prev = trace.e0;
  double e_d_prev = trace.e_d0;
  double sum_c = 0.0;
  double sum_c_ed = 0.0;
  trace.status = StopStatus::MaxIter;

  for (std::size_t m = 1; m <= opts.stop.max_iter; ++m) {
    if (norm.dual_norm(grad) <= grad_tol) {
      trace.status = StopStatus::Gradient;
      break;
    }
    const StepContext ctx{m, state.g, grad, e_prev, e_d_prev};
    StepChoice choice = policy(ctx);
    if (choice.exhausted) {
      trace.status = StopStatus::CoefficientsExhausted;
      break;
    }
    if (is_none(choice.atom)) {
      trace.status = StopStatus::Gradient;
      break;
    }
    const Vector step = choice.c * resolve(choice.atom, dict);
    Vector g_new = state.g + step;
    if (g_new == state.g) choice.flags |= kFlagNoProgress;
    const double e_new = checked_value(e, g_new);
    if (post) post(ctx, choice, e_new);

    grad = checked_gradient(e, g_new);
    const double e_d_new = e_d(-grad, dict).value;

    state.g = std::move(g_new);
    state.coeffs.push_back(choice.c);
    state.a_m += std::abs(choice.c);

    sum_c += choice.c;
    sum_c_ed += choice.c * e_d_new;

    TraceRow row;
    row.m = m;
    row.e = e_new;
    if (trace.known_inf) row.gap = e_new - *trace.known_inf;
    row.e_d = e_d_new;
    row.c = choice.c;
    if (const auto* ia = std::get_if<IndexedAtom>(&choice.atom)) {
      row.atom = static_cast<long>(ia->index);
      row.sign = ia->sign;
    }
    row.a_m = state.a_m;
    row.sum_c = sum_c;
    row.sum_c_ed = sum_c_ed;
    row.flags = choice.flags;
    row.t = choice.t;
    row.pairing = choice.pairing;
    trace.rows.push_back(row);
    state.atoms.push_back(std::move(choice.atom));

    e_prev = e_new;
    e_d_prev = e_d_new;
    if (opts.stop.target_gap && row.gap && *row.gap <= *opts.stop.target_gap) {
      trace.status = StopStatus::TargetGap;
      break;
    }
  }
  return trace;
}

StepChoice weak_choice(const StepContext& ctx, const Dictionary& dict,
                       const WeaknessSequence& tau, SelectMode mode) {
  StepChoice choice;
  choice.t = tau.at(ctx.m);
  Selection sel = select_atom_weak(-ctx.grad, dict, choice.t, mode);
  choice.atom = std::move(sel.atom);
  choice.pairing = sel.pairing;
  return choice;
}

}  // namespace

RunTrace run_gbe(const Objective& e, const Dictionary& dict,
                 const WeaknessSequence& tau, const CoefficientRule& coeff_rule,
                 const RunOptions& opts) {
  if (!coeff_rule) throw ValidationError("coefficient rule is empty");
  return drive(e, dict, "GBE", opts, [&](const StepContext& ctx) {
    StepChoice choice = weak_choice(ctx, dict, tau, opts.mode);
    choice.c = coeff_rule(ctx.m);
    if (!(choice.c > 0.0) || !std::isfinite(choice.c))
      throw ValidationError("coefficient rule must yield positive reals");
    return choice;
  });
}

RunTrace run_ega(const Objective& e, const Dictionary& dict,
                 const CoefficientSequence& coeffs, const RunOptions& opts) {
  if (is_sphere(dict))
    throw UnsupportedOperation(
        "EGA needs a finite dictionary: the infimum over the sphere has no "
        "closed form");
  return drive(e, dict, "EGA", opts, [&](const StepContext& ctx) {
    StepChoice choice;
    const auto c = coeffs.at(ctx.m);
    if (!c) {
      choice.exhausted = true;
      return choice;
    }
    choice.c = *c;
    const AtomValue best = argmin_atom_by_objective(e, ctx.g, *c, dict);
    choice.atom = best.atom;
    choice.pairing = -ctx.grad.dot(resolve(best.atom, dict));
    return choice;
  });
}

RunTrace run_gga_fixed(const Objective& e, const Dictionary& dict,
                       const WeaknessSequence& tau,
                       const CoefficientSequence& coeffs,
                       const RunOptions& opts) {
  return drive(e, dict, "GGA_FIXED", opts, [&](const StepContext& ctx) {
    const auto c = coeffs.at(ctx.m);
    if (!c) {
      StepChoice choice;
      choice.exhausted = true;
      return choice;
    }
    StepChoice choice = weak_choice(ctx, dict, tau, opts.mode);
    choice.c = *c;
    return choice;
  });
}

RunTrace run_gga_adaptive(const Objective& e, const Dictionary& dict,
                          const WeaknessSequence& tau, double b,
                          const Majorant& mu, const RunOptions& opts) {
  if (!(b > 0.0 && b < 1.0)) {
    std::ostringstream os;
    os << "b must be in (0,1), got " << b;
    throw ValidationError(os.str());
  }
  auto policy = [&](const StepContext& ctx) {
    StepChoice choice = weak_choice(ctx, dict, tau, opts.mode);
    if (is_none(choice.atom)) return choice;
    const double slope = 0.5 * choice.t * b * ctx.e_d_prev;
    const auto c = solve_stepsize(mu, slope, mu.domain_bound());
    if (c) {
      choice.c = *c;
    } else {
      choice.c = 1.0;
      choice.flags |= kFlagFallbackStep;
    }
    return choice;
  };
  auto post = [&](const StepContext& ctx, const StepChoice& choice,
                  double e_new) {
    const double bound =
        ctx.e_prev - choice.t * (1.0 - b) * choice.c * ctx.e_d_prev;
    if (e_new > bound + opts.energy_slack) {
      std::ostringstream os;
      os.precision(17);
      os << "MAJORANT_VIOLATION at iteration " << ctx.m << ": E(G_m) = "
         << e_new << " exceeds E(G_{m-1}) - t(1-b) c E_D = " << bound
         << " (majorant " << mu.label() << " does not dominate the modulus)";
      throw MajorantViolation(os.str(), ctx.m, e_new, bound);
    }
  };
  return drive(e, dict, "GGA_ADAPTIVE", opts, policy, post);
}

RunTrace run_gega(const Objective& e, const Dictionary& dict,
                  const WeaknessSequence& tau, const RunOptions& opts) {
  double bound = 2.0 * e.region_radius();
  if (!std::isfinite(bound)) bound = 1e12;
  return drive(e, dict, "GEGA", opts, [&](const StepContext& ctx) {
    StepChoice choice = weak_choice(ctx, dict, tau, opts.mode);
    if (is_none(choice.atom)) return choice;
    const LineSearchResult ls = line_search_exact(
        e, ctx.g, resolve(choice.atom, dict), bound, opts.line_tol);
    choice.c = ls.c;
    if (ls.clamped) choice.flags |= kFlagClamped;
    return choice;
  });
}

Lemma31Result lemma31_bound(const Vector& g, double a_k, const Objective& e,
                            const Dictionary& dict, const Vector& f,
                            double a) {
  if (!(a > 0.0)) throw ValidationError("A must be positive");
  Lemma31Result out;
  if (const auto* fd = std::get_if<FiniteDictionary>(&dict)) {
    if (fd->is_coordinate()) {
      // A_1 of the coordinate dictionary is the ell_1 unit ball
      if (f.lpNorm<1>() > a * (1.0 + 1e-12))
        throw ValidationError("f/A is outside A_1(D): ||f||_1 > A");
      out.membership_checked = true;
    }
  } else {
    // A_1 of the unit sphere is the unit ball
    if (dictionary_norm(dict).norm(f) > a * (1.0 + 1e-12))
      throw ValidationError("f/A is outside A_1(D): ||f|| > A");
    out.membership_checked = true;
  }
  const Vector grad = checked_gradient(e, g);
  out.lhs = e_d(-grad, dict).value;
  out.rhs = (checked_value(e, g) - checked_value(e, f)) / (a + a_k);
  out.holds = out.lhs >= out.rhs - 1e-10;
  return out;
}

Lemma31Result lemma31_bound(const ExpansionState& state, const Objective& e,
                            const Dictionary& dict, const Vector& f,
                            double a) {
  return lemma31_bound(state.g, state.a_m, e, dict, f, a);
}

std::optional<bool> check_rate_bound(const RunTrace& trace, double alpha,
                                     double c, std::size_t burn_in) {
  if (!trace.known_inf) return std::nullopt;
  if (!(alpha > 0.0) || !(c > 0.0))
    throw ValidationError("rate bound needs positive alpha and C");
  for (const TraceRow& row : trace.rows) {
    if (row.m <= burn_in) continue;
    if (*row.gap > c * std::pow(static_cast<double>(row.m), -alpha))
      return false;
  }
  return true;
}

}  // namespace greedy_opt
