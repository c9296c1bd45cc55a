// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "greedy_opt/acceptance.hpp"

int main(int argc, char** argv) {
  namespace acc = greedy_opt::acceptance;
  acc::Options opts;
  opts.trace_dir = argc > 1 ? std::filesystem::path(argv[1])
                            : std::filesystem::temp_directory_path() /
                                  "greedy_opt_acceptance";
  const auto outcomes = acc::run_all(opts);
  int failed = 0;
  for (const auto& o : outcomes) {
    std::printf("[%s] criterion %2d (%s) %.3fs: %s\n", o.passed ? "PASS" : "FAIL",
                o.id, o.name.c_str(), o.seconds, o.detail.c_str());
    if (!o.passed) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", outcomes.size() - failed,
              outcomes.size());
  return failed == 0 ? 0 : 1;
}
