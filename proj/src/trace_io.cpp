#include "greedy_opt/trace_io.hpp"

#include "greedy_opt/csv.hpp"

namespace greedy_opt {

std::string trace_to_csv(const RunTrace& trace) {
  std::string out = "m,E,gap,E_D,c_m,atom,sign,A_m,sum_c,sum_cED,flags\n";
  for (const TraceRow& r : trace.rows) {
    out += std::to_string(r.m);
    out += ',';
    out += format_double(r.e);
    out += ',';
    if (r.gap) out += format_double(*r.gap);
    out += ',';
    out += format_double(r.e_d);
    out += ',';
    out += format_double(r.c);
    out += ',';
    out += std::to_string(r.atom);
    out += ',';
    out += r.sign < 0 ? "-1" : "1";
    out += ',';
    out += format_double(r.a_m);
    out += ',';
    out += format_double(r.sum_c);
    out += ',';
    out += format_double(r.sum_c_ed);
    out += ',';
    out += flags_to_string(r.flags);
    out += '\n';
  }
  return out;
}

nlohmann::json trace_summary(const RunTrace& trace) {
  nlohmann::json j;
  j["algorithm"] = trace.algorithm;
  j["status"] = to_string(trace.status);
  j["iterations"] = trace.rows.size();
  j["E0"] = trace.e0;
  j["E_D0"] = trace.e_d0;
  if (trace.known_inf) j["known_inf"] = *trace.known_inf;
  if (!trace.rows.empty()) {
    const TraceRow& last = trace.rows.back();
    j["final_E"] = last.e;
    if (last.gap) j["final_gap"] = *last.gap;
    j["final_E_D"] = last.e_d;
    j["A_m"] = last.a_m;
  }
  unsigned all_flags = 0;
  for (const TraceRow& r : trace.rows) all_flags |= r.flags;
  j["flags_seen"] = flags_to_string(all_flags);
  return j;
}

}  // namespace greedy_opt
