#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "app.hpp"
#include "golodlab/error.hpp"
#include "golodlab/golod.hpp"

namespace py = pybind11;
using golodlab::app::json;

namespace {

std::string run_json(const std::string& spec, std::optional<std::string> command, std::optional<int> max_h,
                     std::optional<int> max_d, std::optional<std::string> field) {
  golodlab::app::RunOptions o;
  o.command = command.value_or("run");
  o.max_h = max_h;
  o.max_d = max_d;
  o.field = field;
  json doc;
  try {
    doc = json::parse(spec);
  } catch (const json::parse_error& e) {
    throw golodlab::InputError(std::string("spec: not valid json: ") + e.what());
  }
  auto res = golodlab::app::run(golodlab::app::parse_spec(doc), o);
  res.report["meta"]["exit_code"] = res.exit_code;
  return res.report.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Golod rings and modules: Betti numbers, Koszul homology, Massey products, verdicts";

  auto base = py::register_exception<golodlab::Error>(m, "GolodlabError", PyExc_RuntimeError);
  py::register_exception<golodlab::InputError>(m, "InputError", base.ptr());
  py::register_exception<golodlab::CapError>(m, "CapError", base.ptr());
  py::register_exception<golodlab::InternalError>(m, "InternalError", base.ptr());

  m.def("run_json", &run_json, py::arg("spec"), py::arg("command") = py::none(), py::arg("max_h") = py::none(),
        py::arg("max_d") = py::none(), py::arg("field") = py::none(),
        "Run one command on a json spec and return the json report.");
  m.def("emit_text", [](const std::string& report) { return golodlab::app::emit_text(json::parse(report)); },
        py::arg("report"));
  m.def("serre_bound", &golodlab::serre_bound, py::arg("kappa_module"), py::arg("kappa_ring"), py::arg("h"));
  m.def("command_names", &golodlab::app::command_names);
  m.def("theorem_names", &golodlab::theorem_names);
}
