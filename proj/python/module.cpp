// Python bindings: a thin veneer over the command layer.  Reports come back
// as JSON strings so the python side can hand them to json.loads unchanged
// and stay byte-compatible with the CLI output.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "gaudinlab/cli.hpp"

namespace py = pybind11;
using namespace gaudinlab;

namespace {

RunConfig config_from_text(const std::string& text, std::optional<std::uint64_t> seed) {
    RunConfig cfg;
    if (!text.empty()) {
        std::istringstream in(text);
        cfg = parse_config(in);
    }
    if (seed) cfg.seed = *seed;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_gaudinlab, mod) {
    mod.doc() = "exact laboratory for the twisted Gaudin model and its classical shadow";

    py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

    mod.def(
        "verify",
        [](const std::string& config, std::vector<std::string> checks, bool float_mode,
           std::optional<std::uint64_t> seed) {
            return cmd_verify(config_from_text(config, seed), std::move(checks), float_mode).dump(2);
        },
        py::arg("config") = "", py::arg("checks") = std::vector<std::string>{},
        py::arg("float_mode") = false, py::arg("seed") = py::none(),
        "Run the operator-identity verification suite; returns the report as a JSON string.");

    mod.def(
        "spectrum",
        [](const std::string& sector, const std::string& config, std::optional<std::uint64_t> seed) {
            RunConfig cfg = config_from_text(config, seed);
            return cmd_spectrum(cfg, parse_sector(cfg, sector)).dump(2);
        },
        py::arg("sector"), py::arg("config") = "", py::arg("seed") = py::none(),
        "Solve one weight sector by both pipelines; returns the report as a JSON string.");

    mod.def(
        "dynamics",
        [](const std::string& sector, long state, double t_max, int steps, const std::string& config,
           std::optional<std::uint64_t> seed) {
            RunConfig cfg = config_from_text(config, seed);
            DynamicsOutput out = cmd_dynamics(cfg, parse_sector(cfg, sector), state, t_max, steps);
            return py::make_tuple(out.summary.dump(2), out.trajectory_csv, out.conservation_csv);
        },
        py::arg("sector"), py::arg("state") = 0, py::arg("t_max") = 0.1, py::arg("steps") = 100,
        py::arg("config") = "", py::arg("seed") = py::none(),
        "Tau-root trajectories against the integrated flow; returns "
        "(summary_json, trajectory_csv, conservation_csv).");

    mod.def("check_names", [] { return verify_check_names(); },
            "Names accepted by verify(checks=...).");
}
