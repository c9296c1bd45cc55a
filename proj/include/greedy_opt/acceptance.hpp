#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace greedy_opt::acceptance {

struct Criterion {
  int id;
  std::string name;
  /// wall-clock budget in seconds, 0 when unbounded
  double time_limit;
};

const std::vector<Criterion>& criteria();

/// Config of a canned instance: quad2, quad2_unit, quad10, quad64, logistic,
/// p_power. With inject_fault the quadratic majorants are scaled by 1/4.
nlohmann::json canned_objective(const std::string& name, bool inject_fault = false);

struct Options {
  bool inject_fault = false;
  /// where the canned traces are written; empty disables writing
  std::filesystem::path trace_dir;
};

struct Outcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Shared between criteria of one verify invocation: canned trace CSVs by
/// file name.
using TraceCache = std::map<std::string, std::string>;

Outcome run_criterion(int id, const Options& opts, TraceCache& cache);
std::vector<Outcome> run_all(const Options& opts);

/// Prints a pass/fail table. Exit 0 iff every criterion passed, else 1.
int verify_command(bool list_only, bool inject_fault, const std::string& out_dir,
                   std::ostream& out, std::ostream& err);

}  // namespace greedy_opt::acceptance
