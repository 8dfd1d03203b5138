#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "refsys/cli.hpp"
#include "refsys/error.hpp"
#include "refsys/signature.hpp"
#include "refsys/sweeps.hpp"

namespace py = pybind11;
using namespace refsys;

namespace {

py::dict report_dict(const CheckReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["ok"] = r.ok();
  d["instances"] = r.instances;
  d["failed"] = r.failed;
  d["skipped"] = r.skipped;
  d["counterexamples"] = r.counterexamples;
  d["skip_notes"] = r.skip_notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite type refinement systems: judgments, structure queries and law sweeps";

  static PyObject* error_type = PyErr_NewException("refsys._core.RefsysError", PyExc_RuntimeError, nullptr);
  m.attr("RefsysError") = py::reinterpret_borrow<py::object>(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line; returns (exit code, stdout, stderr).");

  m.def("normalize_judgment", [](const std::string& s) { return normalize(parse_judgment(s)); }, py::arg("text"));
  m.def("eval_int_expr", &eval_int_expr, py::arg("expr"), py::arg("x"));
  m.def("suite_names", &suite_names);

  m.def(
      "run_suite",
      [](const std::string& name, std::size_t max_set, std::size_t probe_set, std::size_t max_value) {
        std::vector<SuiteReport> rs;
        {
          py::gil_scoped_release release;
          rs = run_suite(name, SweepBounds{max_set, probe_set, max_value});
        }
        py::list out;
        for (const auto& r : rs) {
          py::list secs;
          for (const auto& s : r.sections) secs.append(report_dict(s));
          py::dict d;
          d["name"] = r.name;
          d["ok"] = r.ok();
          d["instances"] = r.instances();
          d["skipped"] = r.skipped();
          d["sections"] = secs;
          out.append(d);
        }
        return out;
      },
      py::arg("name"), py::arg("max_set") = 3, py::arg("probe_set") = 2, py::arg("max_value") = 2);

  py::dict codes;
  codes["ok"] = static_cast<int>(kExitOk);
  codes["no"] = static_cast<int>(kExitNo);
  codes["ill_formed"] = static_cast<int>(kExitIllFormed);
  codes["invalid"] = static_cast<int>(kExitInvalid);
  m.attr("EXIT") = codes;
}
