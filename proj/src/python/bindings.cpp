#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "greedy_opt/acceptance.hpp"
#include "greedy_opt/diagnostics.hpp"
#include "greedy_opt/dictionary.hpp"
#include "greedy_opt/errors.hpp"
#include "greedy_opt/experiment.hpp"
#include "greedy_opt/linalg.hpp"
#include "greedy_opt/trace_io.hpp"

namespace py = pybind11;
using namespace greedy_opt;

namespace {

nlohmann::json to_json(const py::object& obj) {
  const auto dumps = py::module_::import("json").attr("dumps");
  return nlohmann::json::parse(dumps(obj).cast<std::string>());
}

py::object from_json(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Dictionary make_dictionary(const std::optional<Matrix>& atoms, double p) {
  const NormTag norm = p == 2.0 ? NormTag::euclidean() : NormTag::lp(p);
  if (atoms) return FiniteDictionary(*atoms, norm);
  return SphereDictionary(norm);
}

py::dict run(const py::object& config, const std::string& base_dir) {
  const Experiment ex = build_experiment(to_json(config), base_dir);
  RunResult res;
  {
    py::gil_scoped_release release;
    res = execute(ex);
  }
  std::vector<std::size_t> m;
  std::vector<double> e, e_d, c, gap;
  for (const TraceRow& r : res.trace.rows) {
    m.push_back(r.m);
    e.push_back(r.e);
    e_d.push_back(r.e_d);
    c.push_back(r.c);
    gap.push_back(r.gap ? *r.gap : std::numeric_limits<double>::quiet_NaN());
  }
  py::dict out;
  out["manifest"] = from_json(res.manifest);
  out["status"] = to_string(res.trace.status);
  out["trace_csv"] = trace_to_csv(res.trace);
  out["m"] = m;
  out["e"] = e;
  out["e_d"] = e_d;
  out["c"] = c;
  out["gap"] = gap;
  out["g"] = Vector(res.trace.state.g);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Greedy expansions for convex optimization";

  auto base = py::register_exception<Error>(m, "GreedyOptError");
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<UnsupportedOperation>(m, "UnsupportedOperation",
                                               base.ptr());
  py::register_exception<MajorantViolation>(m, "MajorantViolation", base.ptr());

  m.def(
      "dual_norm",
      [](const Vector& v, double p) {
        return dual_norm(v, p == 2.0 ? NormTag::euclidean() : NormTag::lp(p));
      },
      py::arg("v"), py::arg("p") = 2.0,
      "Dual norm of v for the l_p norm, i.e. the l_{p'} norm.");

  m.def(
      "e_d",
      [](const Vector& grad_neg, const std::optional<Matrix>& atoms, double p) {
        const Dictionary d = make_dictionary(atoms, p);
        const DualPairing dp = e_d(grad_neg, d);
        py::dict out;
        out["value"] = dp.value;
        if (const auto* ia = std::get_if<IndexedAtom>(&dp.atom)) {
          out["index"] = ia->index;
          out["sign"] = ia->sign;
        } else {
          out["index"] = py::none();
          out["sign"] = py::none();
        }
        out["atom"] = is_none(dp.atom) ? py::object(py::none())
                                       : py::cast(resolve(dp.atom, d));
        return out;
      },
      py::arg("grad_neg"), py::arg("atoms") = py::none(), py::arg("p") = 2.0,
      "sup of <grad_neg, g> over the dictionary (columns of `atoms`, or the "
      "unit sphere when omitted).");

  m.def(
      "fit_power_law",
      [](const std::vector<std::size_t>& ms, const std::vector<double>& gaps) {
        return from_json(fit_power_law(ms, gaps).to_json());
      },
      py::arg("ms"), py::arg("gaps"));

  m.def("run", &run, py::arg("config"), py::arg("base_dir") = "",
        "Builds and runs one experiment config (same schema as the CLI).");

  m.def(
      "verify",
      [](bool inject_fault) {
        acceptance::Options opts;
        opts.inject_fault = inject_fault;
        std::vector<acceptance::Outcome> outcomes;
        {
          py::gil_scoped_release release;
          outcomes = acceptance::run_all(opts);
        }
        py::list out;
        for (const auto& o : outcomes) {
          py::dict d;
          d["id"] = o.id;
          d["name"] = o.name;
          d["passed"] = o.passed;
          d["detail"] = o.detail;
          d["seconds"] = o.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("inject_fault") = false);

  m.attr("__version__") = "0.1.0";
}
