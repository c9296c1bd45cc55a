#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "greedy_opt/acceptance.hpp"
#include "greedy_opt/experiment.hpp"

int main(int argc, char** argv) {
  using namespace greedy_opt;

  CLI::App app{"Greedy expansions for smooth convex minimization"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Seed overriding the config");
  app.add_option("--max-iter", max_iter, "Iteration cap overriding the config");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one configured experiment");
  run->add_option("config", config_path, "Config or manifest JSON")->required();

  std::string sweep_config, grid_path;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid");
  sweep->add_option("config", sweep_config, "Base config JSON")->required();
  sweep->add_option("--grid", grid_path, "Grid JSON")->required();

  bool list_only = false;
  bool inject_fault = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_flag("--list", list_only, "List criteria without running them");
  verify->add_flag("--inject-fault", inject_fault,
                   "Scale the quadratic majorants by 1/4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const Overrides overrides{seed, max_iter};
  if (run->parsed())
    return run_command(config_path, out_dir, overrides, std::cout, std::cerr);
  if (sweep->parsed())
    return sweep_command(sweep_config, grid_path, out_dir, overrides, std::cout,
                         std::cerr);
  try {
    return acceptance::verify_command(list_only, inject_fault, out_dir, std::cout,
                                      std::cerr);
  } catch (...) {
    return exit_code_for_current_exception(std::cerr);
  }
}
