#pragma once

#include <string>

#include "greedy_opt/greedy.hpp"

namespace greedy_opt {

/// Header: m,E,gap,E_D,c_m,atom,sign,A_m,sum_c,sum_cED,flags. The gap cell is
/// empty when the infimum is unknown; sphere atoms are written as -1. LF line
/// endings, 17 significant digits.
std::string trace_to_csv(const RunTrace& trace);

/// Summary fields of a run (status, length, final values) for manifests.
nlohmann::json trace_summary(const RunTrace& trace);

}  // namespace greedy_opt
