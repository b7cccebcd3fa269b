// Acceptance criteria 1-8: one PASS/FAIL line each. Exit status is non-zero if any fails.

#include "rydberg_eit/angular.hpp"
#include "rydberg_eit/couplings.hpp"
#include "rydberg_eit/dressing.hpp"
#include "rydberg_eit/oracles.hpp"
#include "rydberg_eit/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace rydberg;

namespace {

constexpr double kRabiRf = 200.0;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0.0) o.require(secs < budget_s, "runtime " + std::to_string(secs) + " s over budget");
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "):" << o.detail.str() << " ["
              << secs << " s]\n";
    failures += !o.pass;
}

DressedResult dress(const Scenario& s, const Vec3& pol = Vec3::unit_z())
{
    return diagonalize(build_rf_hamiltonian(build_basis(s), FieldSpec::rf(kRabiRf, pol)), 1e-6 * kRabiRf);
}

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }
int parity(int twice_sum) { return (twice_sum / 2) % 2 == 0 ? 1 : -1; }

} // namespace

int main()
{
    std::cout.precision(10);

    criterion(1, "transition counts", 1.0, [](Outcome& o) {
        const StateBasis full = build_basis(scenario_full());
        const StateBasis trunc = build_basis(scenario_truncated());
        const auto n_full = count_transitions(enumerate_couplings(full, FieldSpec::rf(kRabiRf)));
        const auto n_trunc = count_transitions(enumerate_couplings(trunc, FieldSpec::rf(kRabiRf)), reachable_origin(trunc));
        o.detail << " full rf = " << n_full << ", truncated reachable-origin rf = " << n_trunc;
        o.require(n_full == 84, "full != 84");
        o.require(n_trunc == 50, "truncated != 50");
    });

    criterion(2, "unique dressed energies", 1.0, [](Outcome& o) {
        const auto full = dress(scenario_full());
        const auto trunc = dress(scenario_truncated());
        o.detail << " full = " << full.unique.size() << ", truncated = " << trunc.unique.size();
        o.require(full.unique.size() == 5, "full != 5");
        o.require(trunc.unique.size() == 25, "truncated != 25");
    });

    criterion(3, "fine-structure reduction", 0.0, [](Outcome& o) {
        const Scenario s = scenario_full();
        const auto r = dress(s);
        const auto blocks = oracle::fine_structure_block_eigenvalues(h(5), h(3), kRabiRf);
        std::vector<double> expected;
        for (double v : blocks)
            for (int k = 0; k <= s.nuclear_spin.twice(); ++k) expected.push_back(v);
        std::sort(expected.begin(), expected.end());
        double worst = expected.size() == r.eigenvalues.size() ? 0.0 : INFINITY;
        for (std::size_t i = 0; i < std::min(expected.size(), r.eigenvalues.size()); ++i)
            worst = std::max(worst, std::abs(expected[i] - r.eigenvalues[i]));
        std::vector<double> positive;
        for (double u : r.unique)
            if (u > 1e-6 * kRabiRf) positive.push_back(u);
        const double ratio = positive.size() == 2 ? positive[1] / positive[0] : NAN;
        o.detail << " max |dlambda| = " << worst << " MHz, ratio = " << ratio << " (sqrt6/2 = " << std::sqrt(6.0) / 2.0 << ")";
        o.require(worst <= 1e-9 * kRabiRf, "multiset mismatch");
        o.require(std::abs(ratio - std::sqrt(6.0) / 2.0) <= 1e-9, "ratio");
    });

    criterion(4, "rotation invariance", 0.0, [](Outcome& o) {
        const auto base = dress(scenario_full());
        double worst = 0.0;
        for (double angle : {30.0, 45.0, 90.0}) {
            const auto r = dress(scenario_full(), Vec3::in_xz_plane(angle));
            if (r.unique.size() != base.unique.size()) {
                o.require(false, "unique count changed at " + std::to_string(angle));
                continue;
            }
            for (std::size_t i = 0; i < r.unique.size(); ++i) worst = std::max(worst, std::abs(r.unique[i] - base.unique[i]));
        }
        o.detail << " max deviation over 0/30/45/90 deg = " << worst << " MHz";
        o.require(worst <= 1e-9 * kRabiRf, "unique set changed");
    });

    const auto grid = linear_grid(-300.0, 300.0, 601);
    const double step = grid[1] - grid[0];
    const StateBasis full = build_basis(scenario_full());
    const auto eigen = dress(scenario_full()).unique;

    criterion(5, "co-polarized spectrum", 60.0, [&](Outcome& o) {
        const auto s = scan_spectrum(full, DriveConfig{}, DecayModel{}, grid);
        o.detail << " peaks:";
        for (double p : s.peaks) o.detail << ' ' << p;
        o.require(s.peaks.size() == 4, "peak count != 4");
        const double window = std::max(step, 0.02 * kRabiRf);
        for (double p : s.peaks) {
            const bool aligned = std::any_of(eigen.begin(), eigen.end(), [&](double e) {
                return std::abs(e) > 1e-6 * kRabiRf && std::abs(p - e) <= window;
            });
            o.require(aligned, "peak " + std::to_string(p) + " not near a nonzero eigenvalue");
            o.require(std::abs(p) > step, "peak at 0");
        }
    });

    criterion(6, "perpendicular spectrum", 60.0, [&](Outcome& o) {
        DriveConfig d;
        d.rf = FieldSpec::rf(kRabiRf, Vec3::unit_x());
        const auto s = scan_spectrum(full, d, DecayModel{}, grid);
        o.detail << " peaks:";
        for (double p : s.peaks) o.detail << ' ' << p;
        o.require(std::any_of(s.peaks.begin(), s.peaks.end(), [&](double p) { return std::abs(p) <= step; }),
                  "no central peak");
    });

    criterion(7, "weak probe vs Lindblad", 0.0, [](Outcome& o) {
        const DecayModel decay;
        for (const Scenario& s : {oracle::three_level_ladder(), oracle::twelve_state_ladder()}) {
            const StateBasis b = build_basis(s);
            DriveConfig d;
            d.probe = FieldSpec::probe(decay.intermediate_mhz / 10.0);
            d.coupling = FieldSpec::coupling(8.0);
            d.rf = FieldSpec::rf(s.name == "twelve-state" ? 12.0 : 0.0);
            double worst = 0.0;
            for (double dc = -15.0; dc <= 15.0; dc += 1.5) {
                d.coupling_detuning_mhz = dc;
                const auto weak = weak_probe_response(b, d, decay);
                const auto lind = probe_susceptibility(b, d, steady_state_lindblad(b, d, decay));
                worst = std::max(worst, std::abs(lind - weak) / std::abs(weak));
            }
            o.detail << ' ' << s.name << " (" << b.size() << " states) max rel dev = " << worst << ';';
            o.require(worst < 0.01, s.name);
        }
    });

    criterion(8, "property suites", 0.0, [&](Outcome& o) {
        double orth = 0.0, sym3 = 0.0, sym6 = 0.0;
        for (int a = 0; a <= 8; ++a)
            for (int b = 0; b <= 8; ++b)
                for (int c = std::abs(a - b); c <= a + b; c += 2) {
                    for (int cp = std::abs(a - b); cp <= a + b; cp += 2)
                        for (int m3 = -std::min(c, cp); m3 <= std::min(c, cp); m3 += 2) {
                            double sum = 0.0;
                            for (int m1 = -a; m1 <= a; m1 += 2) {
                                const int m2 = -m3 - m1;
                                if (std::abs(m2) > b) continue;
                                sum += (c + 1) * angular::wigner3j(h(a), h(b), h(c), h(m1), h(m2), h(m3)) *
                                       angular::wigner3j(h(a), h(b), h(cp), h(m1), h(m2), h(m3));
                            }
                            orth = std::max(orth, std::abs(sum - (c == cp ? 1.0 : 0.0)));
                        }
                    for (int m1 = -a; m1 <= a; m1 += 2)
                        for (int m2 = -b; m2 <= b; m2 += 2) {
                            const int m3 = -m1 - m2;
                            if (std::abs(m3) > c) continue;
                            const double v = angular::wigner3j(h(a), h(b), h(c), h(m1), h(m2), h(m3));
                            sym3 = std::max(sym3, std::abs(v - angular::wigner3j(h(c), h(a), h(b), h(m3), h(m1), h(m2))));
                            sym3 = std::max(sym3, std::abs(parity(a + b + c) * v -
                                                           angular::wigner3j(h(a), h(c), h(b), h(m1), h(m3), h(m2))));
                        }
                    for (int d = 0; d <= 8; ++d)
                        for (int e = 0; e <= 8; ++e)
                            for (int f = 0; f <= 8; ++f) {
                                const double v = angular::wigner6j(h(a), h(b), h(c), h(d), h(e), h(f));
                                sym6 = std::max(sym6, std::abs(v - angular::wigner6j(h(b), h(a), h(c), h(e), h(d), h(f))));
                                sym6 = std::max(sym6, std::abs(v - angular::wigner6j(h(c), h(b), h(a), h(f), h(e), h(d))));
                                sym6 = std::max(sym6, std::abs(v - angular::wigner6j(h(d), h(e), h(c), h(a), h(b), h(f))));
                            }
                }
        o.detail << " 3j orthogonality " << orth << ", 3j symmetry " << sym3 << ", 6j symmetry " << sym6 << ';';
        o.require(orth <= 1e-12 && sym3 <= 1e-12 && sym6 <= 1e-12, "angular identities");

        double chiral = 0.0;
        for (const Scenario& s : {scenario_full(), scenario_truncated()})
            for (double angle : {0.0, 30.0, 45.0, 90.0}) {
                const auto ev = dress(s, Vec3::in_xz_plane(angle)).eigenvalues;
                for (std::size_t k = 0; k < ev.size(); ++k) chiral = std::max(chiral, std::abs(ev[k] + ev[ev.size() - 1 - k]));
            }
        o.detail << " chiral pairing " << chiral << " MHz;";
        o.require(chiral <= 1e-9 * kRabiRf, "chiral symmetry");

        double parity_dev = 0.0;
        for (const char* preset : {"full", "truncated"})
            for (const Vec3& rf_pol : {Vec3::unit_z(), Vec3::unit_x()}) {
                DriveConfig d;
                d.rf = FieldSpec::rf(kRabiRf, rf_pol);
                const WeakProbeSolver solver(build_basis(scenario_preset(preset)), d, DecayModel{});
                for (std::size_t i = 0; i < grid.size() / 2; ++i) {
                    const double a = solver.susceptibility(grid[i]).imag();
                    const double b = solver.susceptibility(grid[grid.size() - 1 - i]).imag();
                    parity_dev = std::max(parity_dev, std::abs(a - b) / std::abs(a));
                }
            }
        o.detail << " absorption parity " << parity_dev << " rel;";
        o.require(parity_dev <= 1e-9, "absorption not even");

        std::size_t cases = 0, mismatches = 0;
        for (const char* preset : {"full", "truncated"})
            for (const Vec3& pol : {Vec3::unit_z(), Vec3::unit_x(), Vec3::in_xz_plane(30.0), Vec3::in_xz_plane(45.0),
                                    Vec3{0.0, 1.0, 0.0}}) {
                const StateBasis b = build_basis(scenario_preset(preset), {pol, pol});
                for (const FieldSpec& f : {FieldSpec::probe(1.0, pol), FieldSpec::coupling(1.0, pol), FieldSpec::rf(1.0, pol)}) {
                    ++cases;
                    const auto lib = enumerate_couplings(b, f).couplings;
                    auto ref = oracle::brute_force_couplings(b, f);
                    std::sort(ref.begin(), ref.end(), [](const auto& x, const auto& y) { return std::tie(x.from, x.to) < std::tie(y.from, y.to); });
                    bool same = lib.size() == ref.size();
                    for (std::size_t i = 0; same && i < lib.size(); ++i)
                        same = lib[i].from == ref[i].from && lib[i].to == ref[i].to && lib[i].q == ref[i].q &&
                               std::abs(lib[i].amplitude - ref[i].amplitude) <= 1e-12;
                    mismatches += !same;
                }
            }
        o.detail << " brute-force enumeration " << cases - mismatches << "/" << cases << " cases equal";
        o.require(mismatches == 0, "enumeration");
    });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria FAILED") << "\n";
    return failures == 0 ? 0 : 1;
}
