#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "greedy_opt/diagnostics.hpp"
#include "greedy_opt/dictionary.hpp"
#include "greedy_opt/greedy.hpp"
#include "greedy_opt/objective.hpp"
#include "json.hpp"

namespace greedy_opt {

inline constexpr int kConfigSchemaVersion = 1;

enum class Algorithm { GBE, EGA, GgaFixed, GgaAdaptive, GEGA };

std::string to_string(Algorithm a);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;
};

/// A fully constructed run: objective, dictionary and algorithm settings,
/// plus the resolved JSON config (defaults and seeds filled in, paths made
/// absolute) that reproduces it.
struct Experiment {
  nlohmann::json config;
  ObjectivePtr objective;
  Dictionary dictionary = SphereDictionary{};
  Algorithm algorithm = Algorithm::GgaAdaptive;
  WeaknessSequence tau = WeaknessSequence::constant(1.0);
  std::optional<double> t;  // set when tau is constant
  double b = 0.5;
  std::optional<Majorant> majorant;
  std::optional<CoefficientSequence> coeffs;
  nlohmann::json derived;  // gamma, q, s, c, known_inf, ...
  RunOptions options;
  std::optional<TheoremId> theorem;
  VerdictConfig verdict_config;
};

/// Validates and builds an experiment from a config or from a manifest (whose
/// "config" member is used). Relative CSV paths resolve against base_dir.
/// Throws ValidationError on any out-of-range parameter.
Experiment build_experiment(const nlohmann::json& config,
                            const std::filesystem::path& base_dir = {},
                            const Overrides& overrides = {});

struct RunResult {
  RunTrace trace;
  std::optional<TheoremVerdict> verdict;
  std::optional<RateFit> fit;
  Lemma21Report lemma21;
  nlohmann::json manifest;
};

RunResult execute(const Experiment& experiment);

/// Exit codes of the command-line entry points.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitMajorantViolation = 3,
  kExitNumeric = 4,
};

/// Maps the current exception to an exit code and prints its message.
int exit_code_for_current_exception(std::ostream& err);

/// Runs one config; writes <out>/<trace> and <out>/<manifest> atomically.
int run_command(const std::string& config_path, const std::string& out_dir,
                const Overrides& overrides, std::ostream& out,
                std::ostream& err);

/// Cartesian product over the grid file's parameters (t, b, s, q, n,
/// dict_size), one trace and manifest per point plus summary.csv in grid
/// order. Exits 0 if at least one point succeeded.
int sweep_command(const std::string& config_path, const std::string& grid_path,
                  const std::string& out_dir, const Overrides& overrides,
                  std::ostream& out, std::ostream& err);

/// Number of sweep workers: GREEDY_OPT_THREADS if set, else the hardware
/// concurrency.
unsigned sweep_threads();

/// Returns a copy of `config` with one sweep parameter set.
nlohmann::json apply_sweep_parameter(nlohmann::json config,
                                     const std::string& name, double value);

}  // namespace greedy_opt
