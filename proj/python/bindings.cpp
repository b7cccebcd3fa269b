#include "rydberg_eit/angular.hpp"
#include "rydberg_eit/commands.hpp"
#include "rydberg_eit/config.hpp"
#include "rydberg_eit/dressing.hpp"
#include "rydberg_eit/spectrum.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace rydberg;

namespace {

HalfInteger hi(double v) { return HalfInteger::from_double(v); }

RunConfig make_config(const std::string& scenario, const std::map<std::string, std::string>& settings)
{
    RunConfig c = parse_config("scenario = " + scenario + "\n");
    for (const auto& [k, v] : settings) apply_setting(c, k, v);
    c.validate();
    return c;
}

} // namespace

PYBIND11_MODULE(rydberg_eit, m)
{
    m.doc() = "Hyperfine Rydberg EIT ladder simulator. Frequencies are linear MHz.";

    py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    m.def("wigner3j",
          [](double j1, double j2, double j3, double m1, double m2, double m3) {
              return angular::wigner3j(hi(j1), hi(j2), hi(j3), hi(m1), hi(m2), hi(m3));
          },
          py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("m1"), py::arg("m2"), py::arg("m3"));
    m.def("wigner6j",
          [](double j1, double j2, double j3, double j4, double j5, double j6) {
              return angular::wigner6j(hi(j1), hi(j2), hi(j3), hi(j4), hi(j5), hi(j6));
          },
          py::arg("j1"), py::arg("j2"), py::arg("j3"), py::arg("j4"), py::arg("j5"), py::arg("j6"));
    m.def("dipole_angular_factor",
          [](double j, double f, double mf, double jp, double fp, double mfp, int q, double nuclear_spin) {
              return angular::dipole_angular_factor(hi(j), hi(f), hi(mf), hi(jp), hi(fp), hi(mfp), q, hi(nuclear_spin));
          },
          py::arg("j"), py::arg("f"), py::arg("mf"), py::arg("j_prime"), py::arg("f_prime"), py::arg("mf_prime"),
          py::arg("q"), py::arg("nuclear_spin"));
    m.def("hyperfine_manifolds",
          [](double j, double nuclear_spin) {
              std::vector<double> out;
              for (auto f : hyperfine_manifolds(hi(j), hi(nuclear_spin))) out.push_back(f.value());
              return out;
          },
          py::arg("j"), py::arg("nuclear_spin"));

    m.def("transition_counts",
          [](const std::string& scenario, const std::map<std::string, std::string>& settings) {
              std::map<std::string, std::pair<std::size_t, std::size_t>> out;
              for (const auto& c : cli::transition_counts(make_config(scenario, settings)))
                  out[std::string(to_string(c.field))] = {c.total, c.reachable_origin};
              return out;
          },
          py::arg("scenario") = "full", py::arg("settings") = std::map<std::string, std::string>{},
          "Per field: (total, reachable-origin) coupling counts.");

    m.def("dressed_eigenvalues",
          [](const std::string& scenario, const std::map<std::string, std::string>& settings) {
              const RunConfig c = make_config(scenario, settings);
              const StateBasis basis = build_basis(c.scenario, c.optical_polarizations());
              const auto r = diagonalize(build_rf_hamiltonian(basis, c.drive.rf, c.drive.rf_detuning_mhz),
                                         c.cluster_tolerance_mhz());
              return py::dict(py::arg("eigenvalues") = r.eigenvalues, py::arg("unique") = r.unique,
                              py::arg("cluster_tolerance_mhz") = r.cluster_tolerance);
          },
          py::arg("scenario") = "full", py::arg("settings") = std::map<std::string, std::string>{});

    m.def("spectrum",
          [](const std::string& scenario, const std::map<std::string, std::string>& settings, unsigned jobs) {
              const RunConfig c = make_config(scenario, settings);
              const StateBasis basis = build_basis(c.scenario, c.optical_polarizations());
              const auto grid = c.scan.grid();
              SpectrumSeries s;
              {
                  py::gil_scoped_release release;
                  s = scan_spectrum(basis, c.drive, c.decay, grid, {c.optical_depth, c.peak_prominence, jobs});
              }
              return py::dict(py::arg("detuning_mhz") = s.detunings, py::arg("absorption") = s.absorption,
                              py::arg("transmission") = s.transmission, py::arg("peaks_mhz") = s.peaks);
          },
          py::arg("scenario") = "full", py::arg("settings") = std::map<std::string, std::string>{},
          py::arg("jobs") = 1u);

    m.def("weak_probe_susceptibility",
          [](const std::string& scenario, const std::map<std::string, std::string>& settings) {
              const RunConfig c = make_config(scenario, settings);
              return weak_probe_response(build_basis(c.scenario, c.optical_polarizations()), c.drive, c.decay);
          },
          py::arg("scenario") = "full", py::arg("settings") = std::map<std::string, std::string>{});

    m.def("validate",
          []() {
              std::vector<std::tuple<std::string, bool, std::string>> out;
              for (const auto& r : cli::run_validation(RunConfig{})) out.emplace_back(r.name, r.passed, r.detail);
              return out;
          },
          "Runs the oracle self-checks; returns (name, passed, detail) tuples.");
}
