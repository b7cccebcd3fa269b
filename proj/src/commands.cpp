#include "rydberg_eit/commands.hpp"

#include "rydberg_eit/angular.hpp"
#include "rydberg_eit/dressing.hpp"
#include "rydberg_eit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

namespace rydberg::cli {

namespace {

const FieldSpec& field_of(const RunConfig& c, FieldKind k)
{
    switch (k) {
    case FieldKind::probe: return c.drive.probe;
    case FieldKind::coupling: return c.drive.coupling;
    case FieldKind::rf: break;
    }
    return c.drive.rf;
}

void emit(const RunConfig& config, Context& ctx, const std::function<void(std::ostream&)>& write)
{
    if (config.output_path.empty()) {
        write(ctx.out);
        return;
    }
    std::ofstream file(config.output_path);
    if (!file) throw ConfigError("cannot write '" + config.output_path + "'");
    write(file);
}

std::string state_label(const StateBasis& basis, std::size_t i)
{
    const Sublevel& s = basis[i];
    return basis.scenario().level(s.role).label + "(F=" + s.f.str() + ",mF=" + s.m.str() + ")";
}

nlohmann::json polarization_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

bool rydberg_manifolds_complete(const Scenario& s)
{
    for (Role r : {Role::rydberg_lower, Role::rydberg_upper}) {
        if (s.max_abs_m[index_of(r)]) return false;
        auto fs = s.f_values(r);
        std::sort(fs.begin(), fs.end());
        if (fs != hyperfine_manifolds(s.level(r).j, s.nuclear_spin)) return false;
    }
    return true;
}

bool hyperfine_degenerate(const Scenario& s)
{
    return std::all_of(s.energy_offset_mhz.begin(), s.energy_offset_mhz.end(),
                       [](const auto& kv) { return kv.second == 0.0; });
}

std::vector<double> repeated_reference(const RunConfig& config)
{
    const auto& s = config.scenario;
    auto ref = fine_structure_reference(s.level(Role::rydberg_lower).j, s.level(Role::rydberg_upper).j,
                                        config.drive.rf);
    const int copies = s.nuclear_spin.twice() + 1;
    std::vector<double> out;
    for (double v : ref)
        for (int k = 0; k < copies; ++k) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<FieldCount> transition_counts(const RunConfig& config)
{
    config.validate();
    const StateBasis basis = build_basis(config.scenario, config.optical_polarizations());
    std::vector<FieldCount> out;
    for (FieldKind k : {FieldKind::probe, FieldKind::coupling, FieldKind::rf}) {
        const CouplingSet set = enumerate_couplings(basis, field_of(config, k));
        out.push_back({k, count_transitions(set), count_transitions(set, reachable_origin(basis))});
    }
    return out;
}

int cmd_transitions(const RunConfig& config, bool list, Context& ctx)
{
    return guarded(ctx, [&] {
        const auto counts = transition_counts(config);
        const StateBasis basis = build_basis(config.scenario, config.optical_polarizations());
        emit(config, ctx, [&](std::ostream& os) {
            if (config.output_format == "json") {
                nlohmann::json doc{{"scenario", config.scenario.name}};
                for (const auto& c : counts) {
                    nlohmann::json entry{{"total", c.total}, {"reachable_origin", c.reachable_origin}};
                    if (list) {
                        nlohmann::json lines = nlohmann::json::array();
                        for (const auto& cp : enumerate_couplings(basis, field_of(config, c.field)).couplings)
                            lines.push_back({{"from", state_label(basis, cp.from)},
                                             {"to", state_label(basis, cp.to)},
                                             {"q", cp.q},
                                             {"amplitude", cp.amplitude.real()},
                                             {"amplitude_imag", cp.amplitude.imag()},
                                             {"strength", cp.strength}});
                        entry["couplings"] = std::move(lines);
                    }
                    doc[std::string(to_string(c.field))] = std::move(entry);
                }
                os << doc.dump(2) << "\n";
                return;
            }
            if (config.output_format == "csv") {
                os << "field,total,reachable_origin\n";
                for (const auto& c : counts) os << to_string(c.field) << ',' << c.total << ',' << c.reachable_origin << '\n';
            } else {
                os << "# scenario: " << config.scenario.name
                   << "; reachable-origin counts lines whose lower sublevel the optical chain populates\n";
                for (const auto& c : counts)
                    os << to_string(c.field) << ": " << c.total << " (reachable-origin: " << c.reachable_origin << ")\n";
            }
            if (!list) return;
            os << std::setprecision(10);
            for (const auto& c : counts)
                for (const auto& cp : enumerate_couplings(basis, field_of(config, c.field)).couplings)
                    os << "# " << to_string(c.field) << ' ' << state_label(basis, cp.from) << " -> "
                       << state_label(basis, cp.to) << " q=" << cp.q << " amplitude=" << cp.amplitude.real()
                       << (cp.amplitude.imag() != 0.0 ? " (imag " + std::to_string(cp.amplitude.imag()) + ")" : "")
                       << " strength=" << cp.strength << '\n';
        });
        return int{kOk};
    });
}

int cmd_dress(const RunConfig& config, Context& ctx)
{
    return guarded(ctx, [&] {
        config.validate();
        const StateBasis basis = build_basis(config.scenario, config.optical_polarizations());
        const RfHamiltonian h = build_rf_hamiltonian(basis, config.drive.rf, config.drive.rf_detuning_mhz);
        const DressedResult dressed = diagonalize(h, config.cluster_tolerance_mhz());

        nlohmann::json doc = to_json(dressed);
        doc["scenario"] = config.scenario.name;
        doc["rf"] = {{"rabi_mhz", config.drive.rf.rabi_mhz}, {"polarization", polarization_json(config.drive.rf.polarization)}};
        doc["dimension"] = h.basis_slice.size();

        const bool comparable = rydberg_manifolds_complete(config.scenario) && hyperfine_degenerate(config.scenario) &&
                                config.drive.rf_detuning_mhz == 0.0;
        if (comparable) {
            const auto reference = repeated_reference(config);
            double worst = 0.0;
            for (std::size_t i = 0; i < reference.size(); ++i)
                worst = std::max(worst, std::abs(reference[i] - dressed.eigenvalues[i]));
            const double tol = 1e-9 * std::max(config.drive.rf.rabi_mhz, 1.0);
            doc["fine_structure_reference"] = {
                {"multiplicity", config.scenario.nuclear_spin.twice() + 1},
                {"unique", unique_eigenvalues(reference, config.cluster_tolerance_mhz())},
                {"max_abs_deviation_mhz", worst},
                {"tolerance_mhz", tol},
                {"matches", worst <= tol}};
        }

        emit(config, ctx, [&](std::ostream& os) {
            if (config.output_format == "csv") {
                os << "# dressed Rydberg energies in MHz (linear); unique_count=" << dressed.unique.size() << "\n";
                os << "index,eigenvalue_mhz\n" << std::setprecision(15);
                for (std::size_t i = 0; i < dressed.eigenvalues.size(); ++i) os << i << ',' << dressed.eigenvalues[i] << '\n';
            } else {
                os << doc.dump(2) << "\n";
            }
        });
        return int{kOk};
    });
}

int cmd_spectrum(const RunConfig& config, Context& ctx)
{
    return guarded(ctx, [&] {
        config.validate();
        const StateBasis basis = build_basis(config.scenario, config.optical_polarizations());
        const auto grid = config.scan.grid();
        const SpectrumSeries series =
            scan_spectrum(basis, config.drive, config.decay, grid,
                          ScanOptions{config.optical_depth, config.peak_prominence, std::max(1u, ctx.jobs)});
        const RfHamiltonian h = build_rf_hamiltonian(basis, config.drive.rf, config.drive.rf_detuning_mhz);
        const DressedResult dressed = diagonalize(h, config.cluster_tolerance_mhz());

        nlohmann::json sidecar{{"units", "MHz (linear frequency)"},
                               {"scenario", config.scenario.name},
                               {"peaks_mhz", series.peaks},
                               {"dressed_unique_eigenvalues_mhz", dressed.unique}};

        if (config.output_format == "json") {
            nlohmann::json doc = to_json(series);
            doc["scenario"] = config.scenario.name;
            doc["dressed_unique_eigenvalues_mhz"] = dressed.unique;
            emit(config, ctx, [&](std::ostream& os) { os << doc.dump(2) << "\n"; });
            return int{kOk};
        }
        emit(config, ctx, [&](std::ostream& os) {
            os << "# peaks_mhz:";
            for (double p : series.peaks) os << ' ' << p;
            os << "\n# dressed_unique_eigenvalues_mhz:";
            for (double v : dressed.unique) os << ' ' << v;
            os << "\n";
            write_csv(series, os);
        });
        if (!config.output_path.empty()) {
            std::filesystem::path side(config.output_path);
            side.replace_extension(".peaks.json");
            std::ofstream out(side);
            if (!out) throw ConfigError("cannot write '" + side.string() + "'");
            out << sidecar.dump(2) << "\n";
        }
        return int{kOk};
    });
}

int cmd_diagram(const RunConfig& config, Context& ctx)
{
    return guarded(ctx, [&] {
        config.validate();
        if (config.output_format == "csv") throw ConfigError("diagram output is JSON only");
        const StateBasis basis = build_basis(config.scenario, config.optical_polarizations());
        std::vector<CouplingSet> sets;
        for (FieldKind k : config.diagram_fields) sets.push_back(enumerate_couplings(basis, field_of(config, k)));
        const nlohmann::json doc = to_json(export_diagram(basis, sets));
        emit(config, ctx, [&](std::ostream& os) { os << doc.dump(2) << "\n"; });
        return int{kOk};
    });
}

// Validation ----------------------------------------------------------------

namespace {

CheckResult check_symbols()
{
    double worst3 = 0.0, worst6 = 0.0;
    std::size_t n3 = 0, n6 = 0;
    constexpr int kMaxTwice = 6;
    for (int a = 0; a <= kMaxTwice; ++a)
        for (int b = 0; b <= kMaxTwice; ++b)
            for (int c = 0; c <= kMaxTwice; ++c) {
                const auto j1 = HalfInteger::from_twice(a), j2 = HalfInteger::from_twice(b), j3 = HalfInteger::from_twice(c);
                if (!angular::triangle(j1, j2, j3)) continue;
                for (int m1 = -a; m1 <= a; m1 += 2)
                    for (int m2 = -b; m2 <= b; m2 += 2) {
                        const int m3 = -m1 - m2;
                        if (std::abs(m3) > c) continue;
                        const auto x = HalfInteger::from_twice(m1), y = HalfInteger::from_twice(m2), z = HalfInteger::from_twice(m3);
                        worst3 = std::max(worst3, std::abs(angular::wigner3j(j1, j2, j3, x, y, z) - oracle::wigner3j(j1, j2, j3, x, y, z)));
                        ++n3;
                    }
                for (int d = 0; d <= kMaxTwice; ++d)
                    for (int e = 0; e <= kMaxTwice; ++e)
                        for (int f = 0; f <= kMaxTwice; ++f) {
                            const auto j4 = HalfInteger::from_twice(d), j5 = HalfInteger::from_twice(e), j6 = HalfInteger::from_twice(f);
                            const double lib = angular::wigner6j(j1, j2, j3, j4, j5, j6);
                            const double ref = oracle::wigner6j(j1, j2, j3, j4, j5, j6);
                            worst6 = std::max(worst6, std::abs(lib - ref));
                            n6 += ref != 0.0;
                        }
            }
    std::ostringstream detail;
    detail << n3 << " 3j and " << n6 << " non-zero 6j symbols (j <= 3); max |diff| 3j " << worst3 << ", 6j " << worst6;
    return {"symbols vs exact Racah sums", worst3 <= 1e-12 && worst6 <= 1e-12, detail.str()};
}

CheckResult check_enumeration()
{
    std::size_t cases = 0;
    double worst = 0.0;
    bool same = true;
    for (const char* preset : {"full", "truncated"})
        for (double angle : {0.0, 45.0, 90.0}) {
            const Vec3 pol = Vec3::in_xz_plane(angle);
            const StateBasis basis = build_basis(scenario_preset(preset), {pol, pol});
            for (const FieldSpec& f : {FieldSpec::probe(1.0, pol), FieldSpec::coupling(1.0, pol), FieldSpec::rf(1.0, pol)}) {
                const auto lib = enumerate_couplings(basis, f).couplings;
                auto ref = oracle::brute_force_couplings(basis, f);
                std::sort(ref.begin(), ref.end(), [](const auto& a, const auto& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
                ++cases;
                if (lib.size() != ref.size()) {
                    same = false;
                    continue;
                }
                for (std::size_t i = 0; i < lib.size(); ++i) {
                    if (lib[i].from != ref[i].from || lib[i].to != ref[i].to || lib[i].q != ref[i].q) same = false;
                    worst = std::max(worst, std::abs(lib[i].amplitude - ref[i].amplitude));
                }
            }
        }
    std::ostringstream detail;
    detail << cases << " scenario/polarization/field cases; max amplitude diff " << worst;
    return {"enumeration vs brute force", same && worst <= 1e-12, detail.str()};
}

CheckResult check_counts()
{
    const StateBasis full = build_basis(scenario_full());
    const StateBasis trunc = build_basis(scenario_truncated());
    const auto rf = FieldSpec::rf(200.0);
    const auto n_full = count_transitions(enumerate_couplings(full, rf));
    const auto n_trunc = count_transitions(enumerate_couplings(trunc, rf), reachable_origin(trunc));
    std::ostringstream detail;
    detail << "full rf: " << n_full << " (expect 84); truncated reachable-origin rf: " << n_trunc << " (expect 50)";
    return {"RF transition counts", n_full == 84 && n_trunc == 50, detail.str()};
}

bool connected_without(const Eigen::MatrixXcd& m, Eigen::Index a, Eigen::Index b)
{
    std::vector<char> seen(static_cast<std::size_t>(m.rows()), 0);
    std::vector<Eigen::Index> stack{a};
    seen[static_cast<std::size_t>(a)] = 1;
    while (!stack.empty()) {
        const Eigen::Index u = stack.back();
        stack.pop_back();
        for (Eigen::Index v = 0; v < m.rows(); ++v) {
            if (m(u, v) == 0.0 || seen[static_cast<std::size_t>(v)]) continue;
            if ((u == a && v == b) || (u == b && v == a)) continue;
            if (v == b) return true;
            seen[static_cast<std::size_t>(v)] = 1;
            stack.push_back(v);
        }
    }
    return false;
}

// Flipping a bridge edge is a gauge change, so only an edge on a cycle alters the spectrum.
void flip_cycle_edge(Eigen::MatrixXcd& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = j + 1; i < m.rows(); ++i)
            if (m(i, j) != 0.0 && connected_without(m, i, j)) {
                m(i, j) = -m(i, j);
                m(j, i) = std::conj(m(i, j));
                return;
            }
}

CheckResult check_reduction(double rel_tol, const ValidateOptions& options)
{
    constexpr double kRabi = 200.0;
    const Scenario s = scenario_full();
    const StateBasis basis = build_basis(s);
    RfHamiltonian h = build_rf_hamiltonian(basis, FieldSpec::rf(kRabi));
    if (options.inject_hamiltonian_sign_fault) flip_cycle_edge(h.matrix);
    const DressedResult dressed = diagonalize(h, rel_tol * kRabi);
    const auto blocks = oracle::fine_structure_block_eigenvalues(s.level(Role::rydberg_lower).j,
                                                                 s.level(Role::rydberg_upper).j, kRabi);
    std::vector<double> expected;
    for (double v : blocks)
        for (int k = 0; k <= s.nuclear_spin.twice(); ++k) expected.push_back(v);
    std::sort(expected.begin(), expected.end());
    double worst = expected.size() == dressed.eigenvalues.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(expected.size(), dressed.eigenvalues.size()); ++i)
        worst = std::max(worst, std::abs(expected[i] - dressed.eigenvalues[i]));
    std::ostringstream detail;
    detail << "max |hyperfine - fine-structure x8| = " << worst << " MHz; unique " << dressed.unique.size()
           << (options.inject_hamiltonian_sign_fault ? " [sign fault injected]" : "");
    return {"fine-structure reduction", worst <= 1e-9 * kRabi && dressed.unique.size() == 5, detail.str()};
}

CheckResult check_unique_counts(double rel_tol)
{
    constexpr double kRabi = 200.0;
    const auto rf = FieldSpec::rf(kRabi);
    const auto full = diagonalize(build_rf_hamiltonian(build_basis(scenario_full()), rf), rel_tol * kRabi);
    const auto trunc = diagonalize(build_rf_hamiltonian(build_basis(scenario_truncated()), rf), rel_tol * kRabi);
    std::ostringstream detail;
    detail << "full " << full.unique.size() << " (expect 5), truncated " << trunc.unique.size() << " (expect 25)";
    return {"unique dressed energies", full.unique.size() == 5 && trunc.unique.size() == 25, detail.str()};
}

CheckResult check_weak_probe()
{
    const DecayModel decay;
    double worst = 0.0;
    for (const Scenario& s : {oracle::three_level_ladder(), oracle::twelve_state_ladder()}) {
        const StateBasis basis = build_basis(s);
        DriveConfig drive;
        drive.probe = FieldSpec::probe(decay.intermediate_mhz / 10.0);
        drive.coupling = FieldSpec::coupling(8.0);
        drive.rf = FieldSpec::rf(s.name == "twelve-state" ? 12.0 : 0.0);
        for (double dc = -12.0; dc <= 12.0; dc += 3.0) {
            drive.coupling_detuning_mhz = dc;
            const auto weak = weak_probe_response(basis, drive, decay);
            const auto full = probe_susceptibility(basis, drive, steady_state_lindblad(basis, drive, decay));
            worst = std::max(worst, std::abs(full - weak) / std::abs(weak));
        }
    }
    std::ostringstream detail;
    detail << "max relative |chi_lindblad - chi_weak| / |chi_weak| = " << worst << " (probe = gamma/10)";
    return {"weak probe vs Lindblad", worst < 0.01, detail.str()};
}

} // namespace

std::vector<CheckResult> run_validation(const RunConfig& config, const ValidateOptions& options)
{
    if (!(config.cluster_tolerance_rel > 0.0)) throw InvalidArgument("cluster tolerance must be > 0");
    return {check_symbols(),
            check_enumeration(),
            check_counts(),
            check_reduction(config.cluster_tolerance_rel, options),
            check_unique_counts(config.cluster_tolerance_rel),
            check_weak_probe()};
}

int cmd_validate(const RunConfig& config, const ValidateOptions& options, Context& ctx)
{
    return guarded(ctx, [&] {
        const auto results = run_validation(config, options);
        bool ok = true;
        for (const auto& r : results) {
            ctx.out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
            ok = ok && r.passed;
        }
        ctx.out << (ok ? "all checks passed" : "validation FAILED") << "\n";
        return int{ok ? kOk : kValidationFailure};
    });
}

} // namespace rydberg::cli
