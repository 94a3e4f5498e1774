// Python bindings for the main operations: geometric factors, channel
// rates, critical angle, waist optimization, scans, and the pulse
// amplitude. Built either standalone through CMake or as a wheel through
// scikit-build-core.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "becfiber/geometry.hpp"
#include "becfiber/pulses.hpp"
#include "becfiber/rates.hpp"
#include "becfiber/scan_table.hpp"
#include "becfiber/selfcheck.hpp"
#include "becfiber/version.hpp"

namespace py = pybind11;
using namespace becfiber;

namespace {

Vec3 to_vec3(const std::tuple<double, double, double>& r) {
    return {std::get<0>(r), std::get<1>(r), std::get<2>(r)};
}

}  // namespace

PYBIND11_MODULE(becfiber, m) {
    m.doc() = "Fiber collection efficiency of optical photons generated from "
              "microwave excitations of a Bose-Einstein condensate";
    m.attr("__version__") = kVersion;

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def(py::init([](double abs_tol, double rel_tol, std::size_t max_evaluations) {
                 return Tolerances{abs_tol, rel_tol, max_evaluations};
             }),
             py::arg("abs_tol") = 1e-12, py::arg("rel_tol") = 1e-10,
             py::arg("max_evaluations") = 1'000'000)
        .def_readwrite("abs_tol", &Tolerances::abs_tol)
        .def_readwrite("rel_tol", &Tolerances::rel_tol)
        .def_readwrite("max_evaluations", &Tolerances::max_evaluations);

    py::class_<GaussianBeam>(m, "GaussianBeam")
        .def(py::init<double, double>(), py::arg("w0_bar"), py::arg("k_bar") = 1.0)
        .def_readonly("k_bar", &GaussianBeam::k_bar)
        .def_readonly("w0_bar", &GaussianBeam::w0_bar)
        .def("rayleigh_range", &GaussianBeam::rayleigh_range)
        .def("width", &GaussianBeam::width, py::arg("z"))
        .def("curvature_radius", &GaussianBeam::curvature_radius, py::arg("z"))
        .def("gouy_phase", &GaussianBeam::gouy_phase, py::arg("z"))
        .def("beam_parameter", &GaussianBeam::beam_parameter, py::arg("z"));

    py::class_<BecCloud>(m, "BecCloud")
        .def(py::init<double, double>(), py::arg("sigma_bar"), py::arg("sigma_z_bar"))
        .def_readonly("sigma_bar", &BecCloud::sigma_bar)
        .def_readonly("sigma_z_bar", &BecCloud::sigma_z_bar);

    py::class_<ScatterGeometry>(m, "ScatterGeometry")
        .def(py::init<GaussianBeam, BecCloud, double, long long, double>(), py::arg("beam"),
             py::arg("cloud"), py::arg("theta") = 0.0, py::arg("n_atoms") = 1,
             py::arg("k_ge_over_kd") = 1.0)
        .def_readonly("beam", &ScatterGeometry::beam)
        .def_readonly("cloud", &ScatterGeometry::cloud)
        .def_readonly("theta", &ScatterGeometry::theta)
        .def_readonly("n_atoms", &ScatterGeometry::n_atoms)
        .def_readonly("k_ge_over_kd", &ScatterGeometry::k_ge_over_kd);

    m.def("erfcx", &erfcx, py::arg("x"), "Scaled complementary error function e^{x^2} erfc(x)");

    m.def(
        "mode_function",
        [](const GaussianBeam& beam, const std::tuple<double, double, double>& r) {
            return mode_function(beam, to_vec3(r));
        },
        py::arg("beam"), py::arg("r"));
    m.def(
        "mode_envelope",
        [](const GaussianBeam& beam, const std::tuple<double, double, double>& r) {
            return mode_envelope(beam, to_vec3(r));
        },
        py::arg("beam"), py::arg("r"));
    m.def(
        "bec_wavefunction",
        [](const BecCloud& cloud, const std::tuple<double, double, double>& r) {
            return bec_wavefunction(cloud, to_vec3(r));
        },
        py::arg("cloud"), py::arg("r"));
    m.def(
        "bec_momentum_wavefunction",
        [](const BecCloud& cloud, const std::tuple<double, double, double>& p) {
            return bec_momentum_wavefunction(cloud, to_vec3(p));
        },
        py::arg("cloud"), py::arg("p"));

    py::class_<XiBreakdown>(m, "XiBreakdown")
        .def_readonly("exact", &XiBreakdown::exact)
        .def_readonly("approx", &XiBreakdown::approx)
        .def_readonly("brute", &XiBreakdown::brute)
        .def_readonly("quad_error", &XiBreakdown::quad_error);

    py::class_<Xi0Breakdown>(m, "Xi0Breakdown")
        .def_readonly("value", &Xi0Breakdown::value)
        .def_readonly("closed_form", &Xi0Breakdown::closed_form)
        .def_readonly("approx_magnitude", &Xi0Breakdown::approx_magnitude)
        .def_readonly("quad_error", &Xi0Breakdown::quad_error);

    m.def("xi", py::overload_cast<const ScatterGeometry&, const Tolerances&>(&xi),
          py::arg("geometry"), py::arg("tol") = Tolerances{});
    m.def("xi0", &xi0, py::arg("geometry"), py::arg("tol") = Tolerances{});
    m.def("xi0_forward_closed", &xi0_forward_closed, py::arg("beam"), py::arg("cloud"));
    m.def("xi_brute_3d", &xi_brute_3d, py::arg("geometry"), py::arg("points_per_axis"));

    py::class_<ChannelRates>(m, "ChannelRates")
        .def_readonly("side_prefactor", &ChannelRates::side_prefactor)
        .def_readonly("forward_prefactor", &ChannelRates::forward_prefactor)
        .def_readonly("cross_section_ratio", &ChannelRates::cross_section_ratio)
        .def_readonly("xi", &ChannelRates::xi)
        .def_readonly("xi0_sq", &ChannelRates::xi0_sq);

    py::class_<CriticalAngleResult>(m, "CriticalAngleResult")
        .def_readonly("theta_star", &CriticalAngleResult::theta_star)
        .def_readonly("dominated_everywhere", &CriticalAngleResult::dominated_everywhere)
        .def_readonly("bracket", &CriticalAngleResult::bracket);

    py::class_<OptimalWaistResult>(m, "OptimalWaistResult")
        .def_readonly("w0_bar", &OptimalWaistResult::w0_bar)
        .def_readonly("forward_prefactor", &OptimalWaistResult::forward_prefactor)
        .def_readonly("at_boundary", &OptimalWaistResult::at_boundary);

    m.def("channel_rates", &channel_rates, py::arg("geometry"), py::arg("tol") = Tolerances{});
    m.def("critical_angle", &critical_angle, py::arg("geometry"), py::arg("theta_max") = 0.1,
          py::arg("tol") = Tolerances{}, py::arg("scan_points") = 256);
    m.def("optimal_waist", &optimal_waist, py::arg("cloud"), py::arg("n_atoms"),
          py::arg("theta"), py::arg("w_range"), py::arg("tol") = Tolerances{});

    py::class_<ScanTable>(m, "ScanTable")
        .def_readonly("columns", &ScanTable::columns)
        .def_readonly("rows", &ScanTable::rows)
        .def_property_readonly("metadata",
                               [](const ScanTable& t) {
                                   py::dict d;
                                   for (const auto& [k, v] : t.metadata)
                                       d[py::str(k)] = py::str(v);
                                   return d;
                               })
        .def("has_errors", &ScanTable::has_errors);

    m.def("theta_scan", &theta_scan, py::arg("geometry"), py::arg("thetas"),
          py::arg("tol") = Tolerances{});
    m.def("n_sweep", &n_sweep, py::arg("base"), py::arg("n_values"),
          py::arg("theta_max") = 0.1, py::arg("tol") = Tolerances{});
    m.def("to_csv", &to_csv, py::arg("table"));
    m.def("to_json", &to_json, py::arg("table"));

    py::class_<PulseEnvelope>(m, "PulseEnvelope")
        .def_static("constant", &PulseEnvelope::constant, py::arg("amplitude_scale") = 1.0)
        .def_static("rectangular", &PulseEnvelope::rectangular, py::arg("t_on"),
                    py::arg("t_off"), py::arg("amplitude_scale") = 1.0)
        .def_static("gaussian", &PulseEnvelope::gaussian, py::arg("t0"), py::arg("width"),
                    py::arg("amplitude_scale") = 1.0)
        .def_static("sampled", &PulseEnvelope::sampled, py::arg("times"),
                    py::arg("amplitudes"), py::arg("amplitude_scale") = 1.0)
        .def("__call__", &PulseEnvelope::operator(), py::arg("t"))
        .def("feature_width", &PulseEnvelope::feature_width)
        .def("describe", &PulseEnvelope::describe);

    py::class_<AmplitudeTrace>(m, "AmplitudeTrace")
        .def_readonly("times", &AmplitudeTrace::times)
        .def_readonly("epsilon", &AmplitudeTrace::epsilon)
        .def_readonly("n_atoms", &AmplitudeTrace::n_atoms)
        .def_readonly("resolution_warning", &AmplitudeTrace::resolution_warning)
        .def_readonly("perturbative_warning", &AmplitudeTrace::perturbative_warning);

    m.def("epsilon_amplitude", &epsilon_amplitude, py::arg("drive"), py::arg("readout"),
          py::arg("times"), py::arg("n_atoms") = 1);
    m.def("perturbative_population", &perturbative_population, py::arg("trace"));

    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("id", &CheckResult::id)
        .def_readonly("name", &CheckResult::name)
        .def_readonly("passed", &CheckResult::passed)
        .def_readonly("detail", &CheckResult::detail)
        .def_readonly("seconds", &CheckResult::seconds);
    m.def("run_selfcheck", &run_selfcheck);
}
