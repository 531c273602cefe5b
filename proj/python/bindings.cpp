#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "evfront/checks.hpp"
#include "evfront/cli/commands.hpp"
#include "evfront/decomposition.hpp"
#include "evfront/dispersion.hpp"
#include "evfront/errors.hpp"
#include "evfront/oracle.hpp"
#include "evfront/phase.hpp"

namespace py = pybind11;
using namespace evfront;

PYBIND11_MODULE(_evfront, m) {
    m.doc() = "Causal wave fields of switched-on sources (core units: hbar = 1)";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<ThresholdError>(m, "ThresholdError", domain.ptr());
    py::register_exception<CausalRegionError>(m, "CausalRegionError", domain.ptr());
    py::register_exception<WindowError>(m, "WindowError", domain.ptr());
    py::register_exception<RegimeError>(m, "RegimeError", domain.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    py::enum_<Sheet>(m, "Sheet").value("UPPER", Sheet::Upper).value("LOWER", Sheet::Lower);
    py::enum_<WaveKind>(m, "WaveKind").value("PROPAGATING", WaveKind::Propagating).value("EVANESCENT", WaveKind::Evanescent);
    py::enum_<SaddleBranch>(m, "SaddleBranch").value("PLUS", SaddleBranch::Plus).value("MINUS", SaddleBranch::Minus);

    py::class_<DispersionModel>(m, "DispersionModel")
        .def_static("non_relativistic", &DispersionModel::non_relativistic, py::arg("mass"), py::arg("potential") = 0.0)
        .def_static("relativistic", &DispersionModel::relativistic, py::arg("mass"), py::arg("light_speed"),
                    py::arg("potential") = 0.0)
        .def_readonly("mass", &DispersionModel::mass)
        .def_readonly("potential", &DispersionModel::potential)
        .def_readonly("light_speed", &DispersionModel::light_speed)
        .def_property_readonly("is_relativistic", &DispersionModel::relativistic_kind)
        .def_property_readonly("rest_frequency", &DispersionModel::rest_frequency);

    py::class_<SourceSpec>(m, "SourceSpec")
        .def_static("sharp", &SourceSpec::sharp, py::arg("amplitude"), py::arg("carrier"))
        .def_static("band", &SourceSpec::band, py::arg("amplitude"), py::arg("carrier"), py::arg("half_width"))
        .def_readonly("amplitude", &SourceSpec::amplitude)
        .def_readonly("carrier", &SourceSpec::carrier)
        .def_readonly("half_width", &SourceSpec::half_width);

    py::class_<QuadratureSettings>(m, "QuadratureSettings")
        .def(py::init<>())
        .def_readwrite("rel_tol", &QuadratureSettings::rel_tol)
        .def_readwrite("abs_tol", &QuadratureSettings::abs_tol)
        .def_readwrite("max_subdivisions", &QuadratureSettings::max_subdivisions);

    m.def("wavenumber", [](const DispersionModel& md, cplx w) { return wavenumber(md, w); }, py::arg("model"),
          py::arg("omega"));
    m.def("classify", &classify, py::arg("model"), py::arg("omega"));
    m.def("front_velocity", &front_velocity, py::arg("model"), py::arg("omega0"));
    m.def("traversal_time", &traversal_time, py::arg("model"), py::arg("omega0"), py::arg("x"));

    py::class_<SaddleInfo>(m, "SaddleInfo")
        .def_readonly("branch", &SaddleInfo::branch)
        .def_readonly("frequency", &SaddleInfo::frequency)
        .def_readonly("wavenumber", &SaddleInfo::wavenumber)
        .def_readonly("phase", &SaddleInfo::phase)
        .def_readonly("curvature", &SaddleInfo::curvature);
    m.def("saddle", py::overload_cast<const DispersionModel&, double, double>(&saddle), py::arg("model"), py::arg("x"),
          py::arg("t"));

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("psi", &OracleResult::psi)
        .def_readonly("est_error", &OracleResult::est_error)
        .def_readonly("causal_zero", &OracleResult::causal_zero)
        .def_property_readonly("method", [](const OracleResult& r) { return std::string(to_string(r.method)); });
    m.def("reference_field", &reference_field, py::arg("model"), py::arg("source"), py::arg("x"), py::arg("t"),
          py::arg("settings") = QuadratureSettings{});
    m.def("cross_check_field", &cross_check_field, py::arg("model"), py::arg("source"), py::arg("x"), py::arg("t"),
          py::arg("settings") = QuadratureSettings{});

    py::class_<WaveDecomposition>(m, "WaveDecomposition")
        .def_readonly("psi_p", &WaveDecomposition::psi_p)
        .def_readonly("psi_s_plus", &WaveDecomposition::psi_s_plus)
        .def_readonly("psi_s_minus", &WaveDecomposition::psi_s_minus)
        .def_readonly("psi_total", &WaveDecomposition::psi_total)
        .def_readonly("gauss_validity", &WaveDecomposition::gauss_validity)
        .def_readonly("near_front", &WaveDecomposition::near_front)
        .def_readonly("front_active", &WaveDecomposition::front_active)
        .def_readonly("inside_light_cone", &WaveDecomposition::inside_light_cone);
    m.def("decompose", &decompose, py::arg("model"), py::arg("source"), py::arg("x"), py::arg("t"));

    m.def("run_checks", [](const std::string& profile) {
        if (profile != "quick" && profile != "full") throw ConfigError("profile must be quick or full");
        py::list out;
        for (const auto& r : checks::run_all(profile == "full" ? checks::Profile::Full : checks::Profile::Quick)) {
            py::dict d;
            d["id"] = r.id;
            d["key"] = r.key;
            d["passed"] = r.passed;
            d["detail"] = r.detail;
            py::dict measured;
            for (const auto& [k, v] : r.measured) measured[py::str(k)] = v;
            d["measured"] = measured;
            out.append(d);
        }
        return out;
    }, py::arg("profile") = "quick");

    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Run the command line with the given arguments; returns (exit code, stdout, stderr).");

    m.attr("__version__") = EVFRONT_VERSION;
}
