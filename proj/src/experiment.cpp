#include "greedy_opt/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "greedy_opt/csv.hpp"
#include "greedy_opt/errors.hpp"
#include "greedy_opt/trace_io.hpp"

namespace greedy_opt {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::GBE: return "GBE";
    case Algorithm::EGA: return "EGA";
    case Algorithm::GgaFixed: return "GGA_FIXED";
    case Algorithm::GgaAdaptive: return "GGA_ADAPTIVE";
    case Algorithm::GEGA: return "GEGA";
  }
  return "?";
}

namespace {

Algorithm algorithm_from_string(const std::string& s) {
  for (Algorithm a : {Algorithm::GBE, Algorithm::EGA, Algorithm::GgaFixed,
                      Algorithm::GgaAdaptive, Algorithm::GEGA})
    if (to_string(a) == s) return a;
  throw ValidationError("unknown algorithm: " + s);
}

const json& require_member(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string(where) + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key, const char* where) {
  const json& v = require_member(j, key, where);
  if (!v.is_number())
    throw ValidationError(std::string(where) + ": \"" + key +
                          "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback,
                 const char* where) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return number(j, key, where);
}

std::string string_or(const json& j, const char* key, std::string fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string())
    throw ValidationError(std::string("\"") + key + "\" must be a string");
  return j.at(key).get<std::string>();
}

std::size_t count_field(const json& j, const char* key, const char* where) {
  const double v = number(j, key, where);
  if (!(v >= 1.0) || v != std::floor(v))
    throw ValidationError(std::string(where) + ": \"" + key +
                          "\" must be a positive integer");
  return static_cast<std::size_t>(v);
}

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    std::ostringstream os;
    os << name << " must be in (0,1), got " << v;
    throw ValidationError(os.str());
  }
}

void check_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "t must be in (0,1], got " << t;
    throw ValidationError(os.str());
  }
}

void check_q(double q) {
  if (!(q > 1.0 && q <= 2.0)) {
    std::ostringstream os;
    os << "q must be in (1,2], got " << q;
    throw ValidationError(os.str());
  }
}

Vector vector_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw ValidationError(std::string(what) + " must be a non-empty array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw ValidationError(std::string(what) + " must hold numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ValidationError(std::string(what) + " must be an array of rows");
  Matrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector r = vector_from_json(j[i], what);
    if (r.size() != m.cols())
      throw ValidationError(std::string(what) + " has ragged rows");
    m.row(i) = r.transpose();
  }
  return m;
}

std::string absolute_path(const json& j, const fs::path& base) {
  if (!j.is_string()) throw ValidationError("path must be a string");
  fs::path p(j.get<std::string>());
  if (p.is_relative() && !base.empty()) p = base / p;
  return fs::absolute(p).lexically_normal().string();
}

std::uint64_t seed_field(json& spec, const char* key, std::uint64_t fallback) {
  if (!spec.contains(key)) {
    spec[key] = fallback;
    return fallback;
  }
  if (!spec.at(key).is_number_unsigned() && !spec.at(key).is_number_integer())
    throw ValidationError(std::string("\"") + key + "\" must be an integer");
  return spec.at(key).get<std::uint64_t>();
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

// Design matrix + response/labels from inline arrays, CSV files, or a
// seeded random instance. `second` is "response" or "labels".
std::pair<Matrix, Vector> load_data(json& spec, const char* second,
                                    const fs::path& base, std::uint64_t seed,
                                    bool labels) {
  const std::string csv_key = std::string(second) + "_csv";
  if (spec.contains("random")) {
    json& r = spec["random"];
    const std::size_t rows = count_field(r, "rows", "objective.random");
    const std::size_t cols = count_field(r, "cols", "objective.random");
    const double noise = number_or(r, "noise", labels ? 1.0 : 0.5, "objective.random");
    r["noise"] = noise;
    std::mt19937_64 rng(seed_field(r, "seed", seed));
    std::normal_distribution<double> normal;
    Matrix x = gaussian_matrix(rows, cols, rng);
    Vector w(cols);
    for (std::size_t j = 0; j < cols; ++j) w[j] = normal(rng);
    Vector y = x * w;
    for (std::size_t i = 0; i < rows; ++i) {
      y[i] += noise * normal(rng);
      if (labels) y[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    }
    return {x, y};
  }
  Matrix x;
  if (spec.contains("design_csv")) {
    spec["design_csv"] = absolute_path(spec["design_csv"], base);
    x = read_matrix_csv(spec["design_csv"].get<std::string>());
  } else {
    x = matrix_from_json(require_member(spec, "design", "objective"), "design");
  }
  Vector y;
  if (spec.contains(csv_key)) {
    spec[csv_key] = absolute_path(spec[csv_key], base);
    y = read_vector_csv(spec[csv_key].get<std::string>());
  } else {
    y = vector_from_json(require_member(spec, second, "objective"), second);
  }
  return {x, y};
}

ObjectivePtr build_objective(json& spec, const fs::path& base,
                             std::uint64_t seed, json& derived) {
  const std::string kind = string_or(spec, "kind", "");
  ObjectivePtr obj;
  if (kind == "quadratic") {
    const double scale = number_or(spec, "scale", 1.0, "objective");
    spec["scale"] = scale;
    Vector target;
    if (spec.contains("random")) {
      json& r = spec["random"];
      const std::size_t n = count_field(r, "n", "objective.random");
      std::mt19937_64 rng(seed_field(r, "seed", seed));
      std::normal_distribution<double> normal;
      target.resize(n);
      for (std::size_t i = 0; i < n; ++i) target[i] = normal(rng);
      if (r.contains("l1_norm")) {
        const double l1 = number(r, "l1_norm", "objective.random");
        if (!(l1 > 0.0)) throw ValidationError("l1_norm must be positive");
        target *= l1 / target.lpNorm<1>();
      }
    } else {
      target = vector_from_json(require_member(spec, "target", "objective"),
                                "target");
    }
    obj = quadratic_objective(target, scale);
  } else if (kind == "p_power") {
    const double p = number(spec, "p", "objective");
    check_q(p);
    const double norm_p = number_or(spec, "norm_p", 2.0, "objective");
    auto [x, y] = load_data(spec, "response", base, seed, false);
    obj = p_power_objective(x, y, p, NormTag::lp(norm_p));
  } else if (kind == "logistic") {
    const double norm_p = number_or(spec, "norm_p", 2.0, "objective");
    auto [x, y] = load_data(spec, "labels", base, seed, true);
    obj = logistic_objective(x, y, NormTag::lp(norm_p));
  } else {
    throw ValidationError("unknown objective kind: \"" + kind + "\"");
  }

  if (spec.contains("known_inf")) {
    const double v = number(spec, "known_inf", "objective");
    obj = obj->with_known_inf({v, Vector(), false});
    derived["known_inf"] = v;
    derived["known_inf_source"] = "config";
  } else if (!obj->known_inf()) {
    const bool want = !spec.contains("reference_infimum") ||
                      spec.at("reference_infimum").get<bool>();
    if (want) {
      const ReferenceSolution ref = reference_infimum(*obj);
      obj = obj->with_known_inf(ref.inf);
      derived["known_inf"] = ref.inf.value;
      derived["known_inf_source"] = "reference GEGA run on the l2 sphere";
      derived["reference_grad_norm"] = ref.grad_norm;
      derived["reference_iterations"] = ref.iterations;
    }
  } else {
    derived["known_inf"] = obj->known_inf()->value;
    derived["known_inf_source"] = "closed form";
  }

  if (spec.contains("majorant_scale")) {
    const double f = number(spec, "majorant_scale", "objective");
    if (!(f > 0.0)) throw ValidationError("majorant_scale must be positive");
    obj = obj->with_majorant(obj->majorant().scaled(f));
    derived["majorant_scale"] = f;
  }
  derived["objective"] = obj->describe();
  derived["gamma"] = obj->majorant().gamma();
  derived["q"] = obj->majorant().q();
  return obj;
}

Dictionary build_dictionary(json& spec, Eigen::Index n, const fs::path& base,
                            std::uint64_t seed) {
  const std::string kind = string_or(spec, "kind", "coordinate");
  spec["kind"] = kind;
  const double p = number_or(spec, "p", 2.0, "dictionary");
  spec["p"] = p;
  const NormTag norm = NormTag::lp(p);
  if (kind == "coordinate") return FiniteDictionary::coordinate(n, norm);
  if (kind == "gaussian") {
    const std::size_t count = count_field(spec, "count", "dictionary");
    return FiniteDictionary::gaussian(n, count, seed_field(spec, "seed", seed),
                                      norm);
  }
  if (kind == "csv") {
    spec["path"] = absolute_path(require_member(spec, "path", "dictionary"), base);
    FiniteDictionary d =
        FiniteDictionary::from_csv(spec["path"].get<std::string>(), norm);
    if (d.dim() != n)
      throw ValidationError("CSV dictionary dimension does not match objective");
    return d;
  }
  if (kind == "sphere") return SphereDictionary(norm);
  throw ValidationError("unknown dictionary kind: \"" + kind + "\"");
}

CoefficientSequence build_coefficients(json& spec, double t,
                                       const Majorant& mu, json& derived) {
  const std::string kind = string_or(spec, "kind", "");
  if (kind == "cs") {
    const double ct = number_or(spec, "t", t, "coefficients");
    const double q = number_or(spec, "q", mu.q(), "coefficients");
    const double gamma = number_or(spec, "gamma", mu.gamma(), "coefficients");
    check_t(ct);
    check_q(q);
    if (!(gamma > 0.0)) throw ValidationError("gamma must be positive");
    spec["t"] = ct;
    spec["q"] = q;
    spec["gamma"] = gamma;
    const CsSequence cs = make_cs_sequence(ct, q, gamma);
    derived["s"] = cs.s;
    derived["c"] = cs.c;
    derived["zeta_bound"] = cs.zeta_bound;
    return cs.coeffs;
  }
  if (kind == "power") {
    const double c = number(spec, "c", "coefficients");
    const double s = number(spec, "s", "coefficients");
    check_open_unit(s, "s");
    derived["s"] = s;
    derived["c"] = c;
    return CoefficientSequence::power(c, s);
  }
  if (kind == "constant")
    return CoefficientSequence::constant(number(spec, "value", "coefficients"));
  if (kind == "explicit") {
    const Vector v = vector_from_json(require_member(spec, "values", "coefficients"),
                                      "coefficients.values");
    return CoefficientSequence::explicit_list(
        std::vector<double>(v.data(), v.data() + v.size()));
  }
  throw ValidationError("unknown coefficient kind: \"" + kind + "\"");
}

}  // namespace

Experiment build_experiment(const json& input, const fs::path& base_dir,
                            const Overrides& overrides) {
  if (!input.is_object()) throw ValidationError("config must be a JSON object");
  json cfg = input.contains("config") && input.at("config").is_object()
                 ? input.at("config")
                 : input;
  if (!cfg.contains("schema_version"))
    throw ValidationError("config is missing \"schema_version\"");
  if (cfg.at("schema_version") != kConfigSchemaVersion)
    throw ValidationError("unsupported schema_version (expected 1)");

  Experiment ex;
  std::uint64_t seed = cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 0;
  if (overrides.seed) seed = *overrides.seed;
  cfg["seed"] = seed;

  json& obj_spec = cfg["objective"];
  if (!obj_spec.is_object()) throw ValidationError("config needs an objective");
  ex.objective = build_objective(obj_spec, base_dir, seed, ex.derived);

  if (!cfg.contains("dictionary")) cfg["dictionary"] = json::object();
  ex.dictionary =
      build_dictionary(cfg["dictionary"], ex.objective->dim(), base_dir, seed + 1);
  ex.derived["dictionary"] = describe(ex.dictionary);

  json& alg = cfg["algorithm"];
  if (!alg.is_object()) throw ValidationError("config needs an algorithm");
  ex.algorithm = algorithm_from_string(string_or(alg, "kind", ""));

  if (alg.contains("tau")) {
    const Vector tau = vector_from_json(alg.at("tau"), "tau");
    for (Eigen::Index i = 0; i < tau.size(); ++i) check_t(tau[i]);
    ex.tau = WeaknessSequence::explicit_list(
        std::vector<double>(tau.data(), tau.data() + tau.size()));
  } else {
    const double t = number_or(alg, "t", 1.0, "algorithm");
    check_t(t);
    alg["t"] = t;
    ex.t = t;
    ex.tau = WeaknessSequence::constant(t);
  }
  const std::string mode = string_or(alg, "mode", "ARGMAX");
  if (mode == "ARGMAX") {
    ex.options.mode = SelectMode::Argmax;
  } else if (mode == "FIRST_ABOVE") {
    ex.options.mode = SelectMode::FirstAbove;
  } else {
    throw ValidationError("mode must be ARGMAX or FIRST_ABOVE");
  }
  alg["mode"] = mode;

  Majorant mu = ex.objective->majorant();
  if (alg.contains("majorant")) {
    const json& m = alg.at("majorant");
    const double q = number_or(m, "q", mu.q(), "algorithm.majorant");
    const double gamma = number_or(m, "gamma", mu.gamma(), "algorithm.majorant");
    check_q(q);
    if (!(gamma > 0.0)) throw ValidationError("majorant gamma must be positive");
    mu = Majorant::power(gamma, q);
  }

  switch (ex.algorithm) {
    case Algorithm::GgaAdaptive:
      ex.b = number_or(alg, "b", 0.5, "algorithm");
      check_open_unit(ex.b, "b");
      alg["b"] = ex.b;
      ex.majorant = mu;
      ex.derived["gamma"] = mu.gamma();
      ex.derived["q"] = mu.q();
      break;
    case Algorithm::GBE:
    case Algorithm::EGA:
    case Algorithm::GgaFixed: {
      const double t_for_cs = ex.algorithm == Algorithm::EGA ? 1.0 : ex.t.value_or(1.0);
      ex.coeffs = build_coefficients(
          alg["coefficients"].is_object() ? alg["coefficients"]
                                          : throw ValidationError(
                                                "algorithm needs coefficients"),
          t_for_cs, mu, ex.derived);
      break;
    }
    case Algorithm::GEGA:
      break;
  }

  json& stop = cfg["stop"];
  if (stop.is_null()) stop = json::object();
  ex.options.stop.max_iter = stop.contains("max_iter")
                                 ? count_field(stop, "max_iter", "stop")
                                 : 1000;
  if (overrides.max_iter) ex.options.stop.max_iter = *overrides.max_iter;
  if (ex.options.stop.max_iter < 1) throw ValidationError("max_iter must be >= 1");
  stop["max_iter"] = ex.options.stop.max_iter;
  if (stop.contains("grad_tol") && !stop.at("grad_tol").is_null()) {
    const double g = number(stop, "grad_tol", "stop");
    if (!(g >= 0.0)) throw ValidationError("grad_tol must be nonnegative");
    ex.options.stop.grad_tol = g;
  }
  if (stop.contains("target_gap") && !stop.at("target_gap").is_null())
    ex.options.stop.target_gap = number(stop, "target_gap", "stop");

  if (cfg.contains("tolerances")) {
    const json& tol = cfg.at("tolerances");
    ex.options.energy_slack =
        number_or(tol, "energy_slack", ex.options.energy_slack, "tolerances");
    ex.options.line_tol = number_or(tol, "line_tol", ex.options.line_tol, "tolerances");
  }
  cfg["tolerances"] = {{"energy_slack", ex.options.energy_slack},
                       {"line_tol", ex.options.line_tol}};

  VerdictConfig& vc = ex.verdict_config;
  vc.algorithm = to_string(ex.algorithm);
  vc.sphere_dictionary = is_sphere(ex.dictionary);
  vc.region_bounded = std::isfinite(ex.objective->region_radius());
  vc.t = ex.algorithm == Algorithm::EGA ? std::optional<double>(1.0) : ex.t;
  if (ex.algorithm == Algorithm::GgaAdaptive) vc.b = ex.b;
  vc.gamma = mu.gamma();
  vc.q = mu.q();
  vc.coeffs = ex.coeffs;
  if (cfg.contains("verdict") && !cfg.at("verdict").is_null()) {
    json& v = cfg["verdict"];
    ex.theorem = theorem_from_string(string_or(v, "theorem", ""));
    if (v.contains("r")) vc.r = number(v, "r", "verdict");
    if (v.contains("calibration"))
      vc.calibration = count_field(v, "calibration", "verdict");
    if (v.contains("window")) {
      const json& w = v.at("window");
      if (!w.is_array() || w.size() != 2)
        throw ValidationError("verdict.window must be [m_lo, m_hi]");
      vc.window = Window{w[0].get<std::size_t>(), w[1].get<std::size_t>()};
    }
    if (v.contains("C")) vc.c_override = number(v, "C", "verdict");
    vc.convergence_tol =
        number_or(v, "convergence_tol", vc.convergence_tol, "verdict");
  }

  ex.config = std::move(cfg);
  return ex;
}

RunResult execute(const Experiment& ex) {
  RunResult res;
  const Objective& e = *ex.objective;
  switch (ex.algorithm) {
    case Algorithm::GBE: {
      const CoefficientSequence& cs = *ex.coeffs;
      res.trace = run_gbe(
          e, ex.dictionary, ex.tau,
          [&](std::size_t m) {
            const auto c = cs.at(m);
            if (!c) throw ValidationError("coefficient list exhausted");
            return *c;
          },
          ex.options);
      break;
    }
    case Algorithm::EGA:
      res.trace = run_ega(e, ex.dictionary, *ex.coeffs, ex.options);
      break;
    case Algorithm::GgaFixed:
      res.trace = run_gga_fixed(e, ex.dictionary, ex.tau, *ex.coeffs, ex.options);
      break;
    case Algorithm::GgaAdaptive:
      res.trace = run_gga_adaptive(e, ex.dictionary, ex.tau, ex.b, *ex.majorant,
                                   ex.options);
      break;
    case Algorithm::GEGA:
      res.trace = run_gega(e, ex.dictionary, ex.tau, ex.options);
      break;
  }

  if (ex.theorem)
    res.verdict = theorem_verdict(*ex.theorem, res.trace, ex.verdict_config);
  if (res.trace.known_inf && res.trace.rows.size() >= 2) {
    try {
      res.fit = fit_rate(res.trace);
    } catch (const ValidationError&) {
      // too few positive gaps to fit
    }
  }
  res.lemma21 = lemma21_diagnostics(res.trace);

  json& m = res.manifest;
  m["schema_version"] = kConfigSchemaVersion;
  m["config"] = ex.config;
  m["derived"] = ex.derived;
  m["summary"] = trace_summary(res.trace);
  m["verdict"] = res.verdict ? res.verdict->to_json() : json(nullptr);
  m["fit"] = res.fit ? res.fit->to_json() : json(nullptr);
  m["lemma21"] = res.lemma21.to_json();
  return res;
}

int exit_code_for_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const MajorantViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitMajorantViolation;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnsupportedOperation& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

fs::path base_of(const std::string& path) {
  return fs::absolute(fs::path(path)).parent_path();
}

std::string output_name(const json& cfg, const char* key, const char* fallback) {
  if (cfg.contains("output") && cfg.at("output").contains(key))
    return cfg.at("output").at(key).get<std::string>();
  return fallback;
}

}  // namespace

int run_command(const std::string& config_path, const std::string& out_dir,
                const Overrides& overrides, std::ostream& out,
                std::ostream& err) {
  try {
    const json cfg = read_json_file(config_path);
    const Experiment ex = build_experiment(cfg, base_of(config_path), overrides);
    const RunResult res = execute(ex);
    const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    const fs::path trace_path = dir / output_name(ex.config, "trace", "trace.csv");
    const fs::path manifest_path =
        dir / output_name(ex.config, "manifest", "manifest.json");
    write_file_atomic(trace_path.string(), trace_to_csv(res.trace));
    write_file_atomic(manifest_path.string(), res.manifest.dump(2) + "\n");
    out << res.trace.algorithm << ": " << to_string(res.trace.status) << " after "
        << res.trace.rows.size() << " iterations";
    if (!res.trace.rows.empty() && res.trace.rows.back().gap)
      out << ", final gap " << format_double(*res.trace.rows.back().gap);
    out << "\n";
    if (res.verdict)
      out << "verdict " << to_string(res.verdict->id)
          << ": preconditions_met=" << res.verdict->preconditions_met
          << " bound_satisfied=" << res.verdict->bound_satisfied << "\n";
    out << "wrote " << trace_path.string() << " and " << manifest_path.string()
        << "\n";
    return kExitOk;
  } catch (...) {
    return exit_code_for_current_exception(err);
  }
}

unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GREEDY_OPT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

json apply_sweep_parameter(json config, const std::string& name, double value) {
  json& cfg = config.contains("config") ? config["config"] : config;
  json& alg = cfg["algorithm"];
  if (name == "t") {
    alg.erase("tau");
    alg["t"] = value;
    if (alg.contains("coefficients") && alg["coefficients"].value("kind", "") == "cs")
      alg["coefficients"].erase("t");
  } else if (name == "b") {
    alg["b"] = value;
  } else if (name == "s") {
    json& c = alg["coefficients"];
    if (c.value("kind", "") != "power")
      throw ValidationError("sweeping s needs coefficients of kind \"power\"");
    c["s"] = value;
  } else if (name == "q") {
    bool applied = false;
    if (alg.contains("majorant")) {
      alg["majorant"]["q"] = value;
      applied = true;
    }
    if (alg.contains("coefficients") && alg["coefficients"].value("kind", "") == "cs") {
      alg["coefficients"]["q"] = value;
      applied = true;
    }
    if (cfg["objective"].value("kind", "") == "p_power") {
      cfg["objective"]["p"] = value;
      applied = true;
    }
    if (!applied) throw ValidationError("no parameter q to sweep in this config");
  } else if (name == "n") {
    json& obj = cfg["objective"];
    if (obj.contains("random") && obj["random"].contains("n")) {
      obj["random"]["n"] = value;
    } else if (obj.contains("random") && obj["random"].contains("cols")) {
      obj["random"]["cols"] = value;
    } else {
      throw ValidationError("sweeping n needs a random objective");
    }
  } else if (name == "dict_size") {
    json& d = cfg["dictionary"];
    if (d.value("kind", "") != "gaussian")
      throw ValidationError("sweeping dict_size needs a gaussian dictionary");
    d["count"] = value;
  } else {
    throw ValidationError("unknown sweep parameter: " + name);
  }
  return config;
}

int sweep_command(const std::string& config_path, const std::string& grid_path,
                  const std::string& out_dir, const Overrides& overrides,
                  std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kOrder = {"t", "b", "s", "q", "n",
                                                  "dict_size"};
  json base_cfg;
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  try {
    base_cfg = read_json_file(config_path);
    const json grid = read_json_file(grid_path);
    if (!grid.is_object()) throw ValidationError("grid must be a JSON object");
    for (auto it = grid.begin(); it != grid.end(); ++it)
      if (std::find(kOrder.begin(), kOrder.end(), it.key()) == kOrder.end())
        throw ValidationError("unknown sweep parameter: " + it.key());
    for (const std::string& key : kOrder) {
      if (!grid.contains(key)) continue;
      const json& vals = grid.at(key);
      if (!vals.is_array()) throw ValidationError("grid values must be arrays");
      std::vector<double> v;
      for (const json& x : vals) v.push_back(x.get<double>());
      axes.emplace_back(key, v);
    }
    std::size_t total = axes.empty() ? 0 : 1;
    for (const auto& a : axes) total *= a.second.size();
    if (total == 0) throw ValidationError("empty parameter grid");
  } catch (...) {
    return exit_code_for_current_exception(err);
  }

  std::vector<std::vector<double>> points(1);
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& p : points)
      for (double v : axis.second) {
        next.push_back(p);
        next.back().push_back(v);
      }
    points = std::move(next);
  }

  struct Row {
    int code = kExitOk;
    std::string status;
    std::string message;
    std::size_t iterations = 0;
    std::optional<double> final_gap;
    std::optional<double> exponent;
  };
  std::vector<Row> rows(points.size());
  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  const fs::path base = base_of(config_path);

  auto work = [&](std::size_t i) {
    Row& row = rows[i];
    std::ostringstream errs;
    try {
      json cfg = base_cfg;
      for (std::size_t k = 0; k < axes.size(); ++k)
        cfg = apply_sweep_parameter(std::move(cfg), axes[k].first, points[i][k]);
      const Experiment ex = build_experiment(cfg, base, overrides);
      const RunResult res = execute(ex);
      const std::string idx = std::to_string(i);
      write_file_atomic((dir / ("trace_" + idx + ".csv")).string(),
                        trace_to_csv(res.trace));
      write_file_atomic((dir / ("manifest_" + idx + ".json")).string(),
                        res.manifest.dump(2) + "\n");
      row.status = to_string(res.trace.status);
      row.iterations = res.trace.rows.size();
      if (!res.trace.rows.empty()) row.final_gap = res.trace.rows.back().gap;
      if (res.fit && res.fit->status == RateFit::Status::Ok)
        row.exponent = res.fit->exponent;
    } catch (...) {
      row.code = exit_code_for_current_exception(errs);
      row.status = "FAILED";
      row.message = errs.str();
    }
  };

  const unsigned nthreads =
      std::min<unsigned>(sweep_threads(), static_cast<unsigned>(points.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < nthreads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < points.size(); i = next++) work(i);
    });
  for (auto& th : pool) th.join();

  std::string csv = "index";
  for (const auto& a : axes) csv += "," + a.first;
  csv += ",status,exit_code,iterations,final_gap,fitted_exponent\n";
  std::size_t ok = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Row& r = rows[i];
    csv += std::to_string(i);
    for (double v : points[i]) csv += "," + format_double(v);
    csv += "," + r.status + "," + std::to_string(r.code) + "," +
           std::to_string(r.iterations) + ",";
    if (r.final_gap) csv += format_double(*r.final_gap);
    csv += ",";
    if (r.exponent) csv += format_double(*r.exponent);
    csv += "\n";
    if (r.code == kExitOk) ++ok;
    if (!r.message.empty()) err << "grid point " << i << ": " << r.message;
  }
  try {
    write_file_atomic((dir / "summary.csv").string(), csv);
  } catch (...) {
    return exit_code_for_current_exception(err);
  }
  out << "sweep: " << ok << "/" << points.size() << " grid points succeeded\n";
  return ok > 0 ? kExitOk : kExitFailure;
}

}  // namespace greedy_opt
