#include "greedy_opt/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "greedy_opt/csv.hpp"
#include "greedy_opt/diagnostics.hpp"
#include "greedy_opt/errors.hpp"
#include "greedy_opt/experiment.hpp"
#include "greedy_opt/smoothness.hpp"
#include "greedy_opt/trace_io.hpp"

namespace greedy_opt::acceptance {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "gradient-method equivalence (sphere GGA vs fixed-step GD)", 1.0},
      {2, "energy inequality E(G_m) <= E(G_m-1) - t(1-b)c_m E_D + 1e-10", 10.0},
      {3, "majorant sandwich 0 <= E(x+uy)-E(x)-u<E'(x),y> <= 2 mu(u||y||), 1000 triples per objective", 0.0},
      {4, "gradient lower bound E_D >= a_k/(A+A_k) along 1000 GGA_FIXED iterations, n=64", 0.0},
      {5, "T3.1 convergence of GGA_FIXED and EGA with CS coefficients, gap <= 1e-2", 5.0},
      {6, "T4.1 rate m^-0.3 on [10, 5000], n=64", 10.0},
      {7, "T5.2 adaptive rate m^-0.2 on [10, 5000], n=64", 0.0},
      {8, "T5.3 sphere rate: a_m m <= 10 a_1 for m <= 1000", 0.0},
      {9, "GEGA solves the separable 2-D quadratic in 2 steps", 0.0},
      {10, "T5.1E GEGA on logistic 20x5, gap <= 1e-4 by m = 1e4", 30.0},
      {11, "oracle equivalences (e_d, fit_rate, solve_stepsize)", 0.0},
      {12, "determinism: canned traces are byte-identical across runs", 0.0},
  };
  return list;
}

json canned_objective(const std::string& name, bool inject_fault) {
  json obj;
  if (name == "quad2") {
    obj = {{"kind", "quadratic"}, {"target", {1.0, 2.0}}};
  } else if (name == "quad2_unit") {
    obj = {{"kind", "quadratic"}, {"target", {1.0 / 3.0, 2.0 / 3.0}}};
  } else if (name == "quad10") {
    obj = {{"kind", "quadratic"}, {"random", {{"n", 10}, {"seed", 10}}}};
  } else if (name == "quad64") {
    obj = {{"kind", "quadratic"},
           {"random", {{"n", 64}, {"seed", 64}, {"l1_norm", 1.0}}}};
  } else if (name == "logistic") {
    obj = {{"kind", "logistic"},
           {"random", {{"rows", 20}, {"cols", 5}, {"seed", 20}, {"noise", 1.0}}}};
  } else if (name == "p_power") {
    obj = {{"kind", "p_power"},
           {"p", 1.5},
           {"random", {{"rows", 20}, {"cols", 5}, {"seed", 15}, {"noise", 0.5}}}};
  } else {
    throw ValidationError("unknown canned instance: " + name);
  }
  if (inject_fault && obj["kind"] == "quadratic") obj["majorant_scale"] = 0.25;
  return obj;
}

namespace {

json config(const json& objective, const json& dictionary, const json& algorithm,
            std::size_t max_iter, std::optional<double> grad_tol = {},
            const json& verdict = nullptr) {
  json cfg = {{"schema_version", kConfigSchemaVersion},
              {"seed", 0},
              {"objective", objective},
              {"dictionary", dictionary},
              {"algorithm", algorithm},
              {"stop", {{"max_iter", max_iter}}}};
  if (grad_tol) cfg["stop"]["grad_tol"] = *grad_tol;
  if (!verdict.is_null()) cfg["verdict"] = verdict;
  return cfg;
}

const json kCoordinate = {{"kind", "coordinate"}};
const json kSphere = {{"kind", "sphere"}, {"p", 2.0}};

json adaptive(double t = 1.0, double b = 0.5) {
  return {{"kind", "GGA_ADAPTIVE"}, {"t", t}, {"b", b}};
}

json fixed_cs(const char* kind) {
  return {{"kind", kind}, {"t", 1.0}, {"coefficients", {{"kind", "cs"}}}};
}

/// Named canned runs; every criterion that produces a trace uses one of these.
json canned_run(const std::string& name, bool fault) {
  if (name == "gd_quad10_sphere")
    return config(canned_objective("quad10", fault), kSphere, adaptive(), 100, 0.0);
  if (name == "adaptive_quad2")
    return config(canned_objective("quad2", fault), kCoordinate, adaptive(), 2000);
  if (name == "adaptive_quad64")
    return config(canned_objective("quad64", fault), kCoordinate, adaptive(), 5000,
                  std::nullopt,
                  {{"theorem", "T5.2"}, {"window", {10, 5000}}});
  if (name == "adaptive_logistic")
    return config(canned_objective("logistic", fault), kCoordinate, adaptive(), 2000);
  if (name == "adaptive_p_power")
    return config(canned_objective("p_power", fault), kCoordinate, adaptive(), 2000);
  if (name == "gga_fixed_quad64_lemma31")
    return config(canned_objective("quad64", fault), kCoordinate,
                  fixed_cs("GGA_FIXED"), 1000, 0.0);
  if (name == "gga_fixed_quad2_t31")
    return config(canned_objective("quad2_unit", fault), kCoordinate,
                  fixed_cs("GGA_FIXED"), 10000, std::nullopt,
                  {{"theorem", "T3.1"}});
  if (name == "ega_quad2_t31")
    return config(canned_objective("quad2_unit", fault), kCoordinate,
                  fixed_cs("EGA"), 10000, std::nullopt, {{"theorem", "T3.1"}});
  if (name == "gga_fixed_quad64_t41")
    return config(canned_objective("quad64", fault), kCoordinate,
                  fixed_cs("GGA_FIXED"), 5000, std::nullopt,
                  {{"theorem", "T4.1"}, {"r", 0.3}, {"window", {10, 5000}}});
  if (name == "ega_quad64_t41")
    return config(canned_objective("quad64", fault), kCoordinate, fixed_cs("EGA"),
                  5000, std::nullopt,
                  {{"theorem", "T4.1"}, {"r", 0.3}, {"window", {10, 5000}}});
  if (name == "adaptive_quad10_sphere")
    return config(canned_objective("quad10", fault), kSphere, adaptive(), 1000,
                  std::nullopt, {{"theorem", "T5.3"}});
  if (name == "gega_quad2")
    return config(canned_objective("quad2", fault), kCoordinate,
                  {{"kind", "GEGA"}, {"t", 1.0}}, 100);
  if (name == "gega_logistic")
    return config(canned_objective("logistic", fault), kCoordinate,
                  {{"kind", "GEGA"}, {"t", 1.0}}, 10000, std::nullopt,
                  {{"theorem", "T5.1E"}, {"convergence_tol", 1e-4}});
  throw ValidationError("unknown canned run: " + name);
}

const std::vector<std::string>& canned_run_names() {
  static const std::vector<std::string> names = {
      "gd_quad10_sphere",     "adaptive_quad2",         "adaptive_quad64",
      "adaptive_logistic",    "adaptive_p_power",       "gga_fixed_quad64_lemma31",
      "gga_fixed_quad2_t31",  "ega_quad2_t31",          "gga_fixed_quad64_t41",
      "ega_quad64_t41",       "adaptive_quad10_sphere", "gega_quad2",
      "gega_logistic"};
  return names;
}

struct Ran {
  Experiment ex;
  RunResult res;
};

Ran run(const std::string& name, const Options& opts, TraceCache& cache) {
  Ran r{build_experiment(canned_run(name, opts.inject_fault)), {}};
  r.res = execute(r.ex);
  cache.emplace(name + ".csv", trace_to_csv(r.res.trace));
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

struct Check {
  bool ok = true;
  std::ostringstream detail;  // shown on success
  std::string failures;
  void fail(const std::string& why) {
    if (!ok) failures += "; ";
    ok = false;
    failures += why;
  }
  std::string text() const { return ok ? detail.str() : failures; }
};

// ---------------------------------------------------------------------------

void criterion1(Check& chk, const Options& o, TraceCache& cache) {
  const Ran r = run("gd_quad10_sphere", o, cache);
  const Objective& e = *r.ex.objective;
  if (r.res.trace.rows.size() != 100) {
    chk.fail("run stopped after " + std::to_string(r.res.trace.rows.size()) +
             " iterations");
    return;
  }
  // plain gradient descent with step b / (2 gamma)
  const double step = r.ex.b / (2.0 * r.ex.majorant->gamma());
  std::vector<Vector> gd;
  Vector x = Vector::Zero(e.dim());
  gd.push_back(x);
  for (int k = 0; k < 100; ++k) {
    x = x - step * e.gradient(x);
    gd.push_back(x);
  }
  double worst = 0.0;
  replay(r.res.trace.state, r.ex.dictionary,
         [&](std::size_t k, const Vector& g, double) {
           for (Eigen::Index i = 0; i < g.size(); ++i) {
             const double ref = gd[k][i];
             const double err = std::abs(g[i] - ref);
             const double rel = ref == 0.0 ? (err == 0.0 ? 0.0 : INFINITY)
                                           : err / std::abs(ref);
             worst = std::max(worst, rel);
           }
         });
  chk.detail << "max relative coordinate error " << fmt(worst);
  if (!(worst <= 1e-12)) chk.fail("relative error " + fmt(worst) + " > 1e-12");
}

void criterion2(Check& chk, const Options& o, TraceCache& cache) {
  std::size_t total = 0;
  double worst = -INFINITY;
  for (const char* name : {"adaptive_quad2", "adaptive_quad64", "adaptive_logistic",
                           "adaptive_p_power"}) {
    const Ran r = run(name, o, cache);
    const RunTrace& tr = r.res.trace;
    for (const TraceRow& row : tr.rows) {
      const double rhs = tr.e_before(row.m) -
                         row.t * (1.0 - r.ex.b) * row.c * tr.e_d_before(row.m);
      worst = std::max(worst, row.e - rhs);
      ++total;
      if (row.e > rhs + 1e-10)
        chk.fail(std::string(name) + ": violated at m=" + std::to_string(row.m));
      if (row.flags & kFlagFallbackStep)
        chk.fail(std::string(name) + ": c_m = 1 fallback at m=" +
                 std::to_string(row.m));
    }
  }
  if (chk.ok)
    chk.detail << total << " iterations checked, max E(G_m) - bound = "
               << fmt(worst);
}

void criterion3(Check& chk, const Options& o) {
  struct Case {
    std::string name;
    ObjectivePtr e;
  };
  std::vector<Case> cases;
  for (const char* n : {"quad2", "quad64", "logistic", "p_power"}) {
    json obj = canned_objective(n, o.inject_fault);
    obj["reference_infimum"] = false;
    const Experiment ex = build_experiment(
        config(obj, kCoordinate, {{"kind", "GEGA"}}, 1));
    cases.push_back({n, ex.objective});
  }
  Vector a(3);
  a << 1.0, -2.0, 0.5;
  cases.push_back({"linear", linear_objective(a)});

  std::size_t total = 0;
  std::uint64_t seed = 0xacce55;
  for (const Case& c : cases) {
    const Objective& e = *c.e;
    const double radius =
        std::isfinite(e.region_radius()) ? e.region_radius() : 10.0;
    Rng rng(seed++);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t violations = 0;
    std::size_t not_applicable = 0;
    for (int i = 0; i < 1000; ++i) {
      const Vector x = sample_lp_ball(e.dim(), radius, e.norm(), rng);
      const Vector y = random_unit_direction(e.dim(), e.norm(), rng) *
                       (0.1 + 0.9 * unit(rng));
      const double u = unit(rng);
      switch (lemma11_status(e, x, y, u, e.majorant(), 1e-9)) {
        case Lemma11Status::Holds: break;
        case Lemma11Status::Violated: ++violations; break;
        case Lemma11Status::NotApplicable: ++not_applicable; break;
      }
      ++total;
    }
    if (violations > 0)
      chk.fail(c.name + ": " + std::to_string(violations) + " violations");
    if (not_applicable > 0)
      chk.fail(c.name + ": " + std::to_string(not_applicable) +
               " samples fell outside the region");
  }
  if (chk.ok)
    chk.detail << total << " triples over " << cases.size()
               << " objectives, zero violations";
}

void criterion4(Check& chk, const Options& o, TraceCache& cache) {
  const Ran r = run("gga_fixed_quad64_lemma31", o, cache);
  const Objective& e = *r.ex.objective;
  const Vector f = e.known_inf()->minimizer;
  const double a = f.lpNorm<1>();
  std::size_t checked = 0;
  double worst = INFINITY;
  replay(r.res.trace.state, r.ex.dictionary,
         [&](std::size_t k, const Vector& g, double a_k) {
           const Lemma31Result res = lemma31_bound(g, a_k, e, r.ex.dictionary, f, a);
           worst = std::min(worst, res.lhs - res.rhs);
           ++checked;
           if (!res.holds) chk.fail("fails at k=" + std::to_string(k));
           if (!res.membership_checked) chk.fail("membership unchecked");
         });
  if (r.res.trace.rows.size() != 1000)
    chk.fail("run has " + std::to_string(r.res.trace.rows.size()) + " iterations");
  if (chk.ok)
    chk.detail << checked << " states, min lhs - rhs = " << fmt(worst);
}

void expect_verdict(Check& chk, const std::string& name, const RunResult& res) {
  if (!res.verdict) {
    chk.fail(name + ": no verdict");
    return;
  }
  const TheoremVerdict& v = *res.verdict;
  if (!v.preconditions_met) {
    std::string why;
    for (const auto& s : v.reasons) why += (why.empty() ? "" : ", ") + s;
    chk.fail(name + ": preconditions not met (" + why + ")");
  }
  if (!v.bound_satisfied) chk.fail(name + ": bound not satisfied");
}

double final_gap(const RunResult& res) {
  return res.trace.rows.empty() ? res.trace.e0 - *res.trace.known_inf
                                : *res.trace.rows.back().gap;
}

void criterion5(Check& chk, const Options& o, TraceCache& cache) {
  for (const char* name : {"gga_fixed_quad2_t31", "ega_quad2_t31"}) {
    const Ran r = run(name, o, cache);
    const double gap = final_gap(r.res);
    chk.detail << name << " gap " << fmt(gap) << " at m="
               << r.res.trace.rows.size() << "  ";
    if (!(gap <= 1e-2)) chk.fail(std::string(name) + ": gap " + fmt(gap));
    expect_verdict(chk, name, r.res);
  }
}

void criterion6(Check& chk, const Options& o, TraceCache& cache) {
  for (const char* name : {"gga_fixed_quad64_t41", "ega_quad64_t41"}) {
    const Ran r = run(name, o, cache);
    expect_verdict(chk, name, r.res);
    if (r.res.verdict)
      chk.detail << name << " C=" << fmt(r.res.verdict->details.value("C", 0.0))
                 << " final gap " << fmt(final_gap(r.res)) << "  ";
  }
}

/// a_m <= C m^-alpha with C calibrated on m <= 10, over the window.
CalibratedCheck power_check(const RunTrace& tr, double alpha, Window window) {
  std::vector<std::size_t> ms;
  std::vector<double> gaps, bound;
  for (const TraceRow& row : tr.rows) {
    ms.push_back(row.m);
    gaps.push_back(*row.gap);
    bound.push_back(std::pow(static_cast<double>(row.m), -alpha));
  }
  return calibrated_bound_check(ms, gaps, bound, 10, window);
}

void criterion7(Check& chk, const Options& o, TraceCache& cache) {
  const Ran r = run("adaptive_quad64", o, cache);
  expect_verdict(chk, "T5.2 verdict", r.res);
  const CalibratedCheck c = power_check(r.res.trace, 0.2, {10, 5000});
  if (!c.satisfied)
    chk.fail("a_m > C m^-0.2 at m=" + std::to_string(*c.first_failure));
  if (chk.ok)
    chk.detail << "C=" << fmt(c.c) << ", " << c.checked << " iterations checked, "
               << to_string(r.res.trace.status) << " at m="
               << r.res.trace.rows.size();
}

void criterion8(Check& chk, const Options& o, TraceCache& cache) {
  const Ran r = run("adaptive_quad10_sphere", o, cache);
  const RunTrace& tr = r.res.trace;
  if (tr.rows.empty()) {
    chk.fail("empty trace");
    return;
  }
  const double a1 = *tr.rows.front().gap;
  for (const TraceRow& row : tr.rows) {
    if (row.m > 1000) break;
    if (*row.gap * static_cast<double>(row.m) > 10.0 * a1)
      chk.fail("a_m m > 10 a_1 at m=" + std::to_string(row.m));
  }
  expect_verdict(chk, "T5.3 verdict", r.res);
  if (chk.ok)
    chk.detail << tr.rows.size() << " iterations (" << to_string(tr.status)
               << "), a_1 = " << fmt(a1);
}

void criterion9(Check& chk, const Options& o, TraceCache& cache) {
  const Ran r = run("gega_quad2", o, cache);
  const RunTrace& tr = r.res.trace;
  if (tr.rows.size() != 2) chk.fail(std::to_string(tr.rows.size()) + " iterations");
  if (!tr.rows.empty() && !(std::abs(tr.rows.back().e) <= 1e-18))
    chk.fail("E(G_m) = " + fmt(tr.rows.back().e));
  if (tr.status != StopStatus::Gradient) chk.fail("status " + to_string(tr.status));
  if (chk.ok)
    chk.detail << "E(G_2) = " << format_double(tr.rows.back().e) << ", "
               << to_string(tr.status);
}

void criterion10(Check& chk, const Options& o, TraceCache& cache) {
  const Ran r = run("gega_logistic", o, cache);
  const double gap = final_gap(r.res);
  if (!(gap <= 1e-4)) chk.fail("gap " + fmt(gap));
  expect_verdict(chk, "T5.1E verdict", r.res);
  if (chk.ok)
    chk.detail << "gap " << fmt(gap) << " at m=" << r.res.trace.rows.size()
               << " (" << to_string(r.res.trace.status) << ")";
}

void criterion11(Check& chk) {
  // e_d against a naive scan of all signed atoms
  const Eigen::Index n = 20;
  const FiniteDictionary fd = FiniteDictionary::gaussian(n, 1000, 11);
  const Dictionary dict = fd;
  Rng rng(1111);
  std::normal_distribution<double> normal;
  std::size_t mismatches = 0;
  for (int k = 0; k < 100; ++k) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    double best = -INFINITY;
    Eigen::Index best_i = -1;
    int best_sign = 0;
    for (Eigen::Index i = 0; i < fd.size(); ++i) {
      double dot = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) dot += v[j] * fd.atoms()(j, i);
      for (int sign : {1, -1}) {
        const double val = sign * dot;
        if (val > best) {
          best = val;
          best_i = i;
          best_sign = sign;
        }
      }
    }
    const DualPairing got = e_d(v, dict);
    const auto* atom = std::get_if<IndexedAtom>(&got.atom);
    if (!atom || got.value != best || atom->index != best_i ||
        atom->sign != best_sign)
      ++mismatches;
  }
  if (mismatches) chk.fail(std::to_string(mismatches) + " e_d mismatches");

  // fit_rate on exact power laws
  double fit_err = 0.0;
  for (auto [c, alpha] : std::vector<std::pair<double, double>>{
           {1.0, 1.0}, {5.0, 0.2}, {0.3, 2.5}, {2.0, 2.0 / 3.0}, {1e-3, 0.05}}) {
    std::vector<std::size_t> ms;
    std::vector<double> gaps;
    for (std::size_t m = 1; m <= 1000; ++m) {
      ms.push_back(m);
      gaps.push_back(c * std::pow(static_cast<double>(m), -alpha));
    }
    const RateFit fit = fit_power_law(ms, gaps);
    fit_err = std::max(fit_err, std::abs(fit.exponent + alpha));
  }
  if (!(fit_err <= 1e-10)) chk.fail("fit exponent error " + fmt(fit_err));

  // closed-form step size against bisection
  double step_err = 0.0;
  for (double gamma : {0.5, 2.0, 1e-3, 37.0})
    for (double q : {1.1, 1.5, 1.75, 2.0})
      for (double slope : {1e-3, 0.5, 10.0}) {
        const Majorant mu = Majorant::power(gamma, q);
        const auto closed = solve_stepsize(mu, slope, INFINITY);
        const auto bis = solve_stepsize_bisection(mu, slope, INFINITY);
        if (!closed || !bis) {
          chk.fail("no step size for gamma=" + fmt(gamma) + " q=" + fmt(q));
          continue;
        }
        step_err = std::max(step_err, std::abs(*closed - *bis) / *closed);
      }
  if (!(step_err <= 1e-12)) chk.fail("step size relative error " + fmt(step_err));
  if (chk.ok)
    chk.detail << "100 e_d scans exact; fit error " << fmt(fit_err)
               << "; step size error " << fmt(step_err);
}

void criterion12(Check& chk, const Options& o, TraceCache& cache) {
  std::size_t compared = 0;
  for (const std::string& name : canned_run_names()) {
    const std::string file = name + ".csv";
    if (!cache.count(file)) {
      const Experiment ex = build_experiment(canned_run(name, o.inject_fault));
      cache.emplace(file, trace_to_csv(execute(ex).trace));
    }
    const Experiment ex = build_experiment(canned_run(name, o.inject_fault));
    const std::string again = trace_to_csv(execute(ex).trace);
    ++compared;
    if (again != cache.at(file)) chk.fail(name + " differs between runs");
    if (!o.trace_dir.empty()) {
      write_file_atomic((o.trace_dir / file).string(), again);
      const std::ifstream in(o.trace_dir / file, std::ios::binary);
      std::ostringstream back;
      back << in.rdbuf();
      if (back.str() != again) chk.fail(name + ": written file differs");
    }
  }
  if (chk.ok) {
    chk.detail << compared << " canned traces byte-identical";
    if (!o.trace_dir.empty()) chk.detail << ", written to " << o.trace_dir.string();
  }
}

}  // namespace

Outcome run_criterion(int id, const Options& opts, TraceCache& cache) {
  Outcome out;
  out.id = id;
  const Criterion* crit = nullptr;
  for (const Criterion& c : criteria())
    if (c.id == id) crit = &c;
  if (!crit) throw ValidationError("no criterion " + std::to_string(id));
  out.name = crit->name;

  Check chk;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: criterion1(chk, opts, cache); break;
      case 2: criterion2(chk, opts, cache); break;
      case 3: criterion3(chk, opts); break;
      case 4: criterion4(chk, opts, cache); break;
      case 5: criterion5(chk, opts, cache); break;
      case 6: criterion6(chk, opts, cache); break;
      case 7: criterion7(chk, opts, cache); break;
      case 8: criterion8(chk, opts, cache); break;
      case 9: criterion9(chk, opts, cache); break;
      case 10: criterion10(chk, opts, cache); break;
      case 11: criterion11(chk); break;
      case 12: criterion12(chk, opts, cache); break;
    }
  } catch (const std::exception& e) {
    chk.fail(e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
  if (crit->time_limit > 0.0 && out.seconds > crit->time_limit)
    chk.fail("took " + fmt(out.seconds) + " s, limit " + fmt(crit->time_limit) +
             " s");
  out.passed = chk.ok;
  out.detail = chk.text();
  return out;
}

std::vector<Outcome> run_all(const Options& opts) {
  TraceCache cache;
  std::vector<Outcome> out;
  for (const Criterion& c : criteria()) out.push_back(run_criterion(c.id, opts, cache));
  return out;
}

int verify_command(bool list_only, bool inject_fault, const std::string& out_dir,
                   std::ostream& out, std::ostream& err) {
  if (list_only) {
    for (const Criterion& c : criteria()) {
      out << std::setw(3) << c.id << "  " << c.name;
      if (c.time_limit > 0.0) out << "  [< " << c.time_limit << " s]";
      out << "\n";
    }
    return kExitOk;
  }
  Options opts;
  opts.inject_fault = inject_fault;
  opts.trace_dir = fs::path(out_dir.empty() ? "." : out_dir) / "verify_traces";
  if (inject_fault) out << "fault injection: quadratic majorants scaled by 1/4\n";

  TraceCache cache;
  std::vector<Outcome> failed;
  for (const Criterion& c : criteria()) {
    const Outcome o = run_criterion(c.id, opts, cache);
    out << (o.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << o.id << "  "
        << o.name << "  (" << std::fixed << std::setprecision(2) << o.seconds
        << " s)  " << o.detail << "\n"
        << std::defaultfloat;
    out.flush();
    if (!o.passed) failed.push_back(o);
  }
  if (failed.empty()) {
    out << "all " << criteria().size() << " criteria passed\n";
    return kExitOk;
  }
  for (const Outcome& o : failed)
    err << "verify: criterion " << o.id << " failed (" << o.name << "): "
        << o.detail << "\n";
  return kExitFailure;
}

}  // namespace greedy_opt::acceptance
