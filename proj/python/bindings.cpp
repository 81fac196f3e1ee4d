#include "qfan/pipeline.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qfan;

namespace {

py::tuple run_path(const std::string& command, const std::string& path, int order, int bound)
{
    RunConfig cfg;
    cfg.command = command;
    cfg.input = path;
    cfg.q_order = order;
    cfg.semigroup_bound = bound;
    std::string out;
    int code = dispatch(cfg, out);
    return py::make_tuple(code, out);
}

py::tuple run_text(const std::string& command, const std::string& text, bool toml, int order,
                   int bound)
{
    RunConfig cfg;
    cfg.command = command;
    cfg.q_order = order;
    cfg.semigroup_bound = bound;
    std::string out;
    int code;
    try {
        FanFile ff = parse_fan_text(text, toml);
        code = dispatch_parsed(cfg, ff, out);
    } catch (const Error& e) {
        code = 2;
        out = std::string("{\"error\": \"") + e.code() + "\"}";
    }
    return py::make_tuple(code, out);
}

}  // namespace

PYBIND11_MODULE(_qfan, m)
{
    m.doc() = "exact toric mirror symmetry checks: GKZ operator families, Batyrev rings, "
              "I-functions, mirror maps and quantum connection matrices from fan data";

    m.def("run", &run_path, py::arg("command"), py::arg("path"), py::arg("order") = 4,
          py::arg("bound") = 4,
          "Run one pipeline command on a fan file; returns (exit_code, report_json).");
    m.def("run_text", &run_text, py::arg("command"), py::arg("text"), py::arg("toml") = true,
          py::arg("order") = 4, py::arg("bound") = 4,
          "Run one pipeline command on fan data given as TOML or JSON text.");
    m.attr("commands") =
        py::make_tuple("check-fan", "classify", "exact-seq", "mori", "semigroup", "cohomology",
                       "gkz-ops", "qring", "ifunction", "mirror-map", "connection", "verify");
}
