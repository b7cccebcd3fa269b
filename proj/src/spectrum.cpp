#include "rydberg_eit/spectrum.hpp"

#include "rydberg_eit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <thread>

namespace rydberg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_roles(const FieldSpec& f, Role lower, Role upper)
{
    if (f.lower != lower || f.upper != upper)
        throw InvalidArgument(std::string(to_string(f.kind)) + " field connects the wrong levels");
}

/// Full N x N off-diagonal field terms in angular units (rad/us), Hermitian.
Eigen::MatrixXcd field_terms(const StateBasis& basis, std::span<const FieldSpec* const> fields)
{
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (const FieldSpec* f : fields) {
        if (f->rabi_mhz == 0.0) continue;
        for (const auto& c : enumerate_couplings(basis, *f).couplings) {
            const std::complex<double> element = kTwoPi * 0.5 * f->rabi_mhz * c.amplitude;
            h(static_cast<Eigen::Index>(c.to), static_cast<Eigen::Index>(c.from)) += element;
            h(static_cast<Eigen::Index>(c.from), static_cast<Eigen::Index>(c.to)) += std::conj(element);
        }
    }
    return h;
}

/// Rotating-frame energy of a sublevel in MHz (linear).
double frame_energy(const Sublevel& s, const DriveConfig& d)
{
    switch (s.role) {
    case Role::ground: return s.energy_offset_mhz;
    case Role::intermediate: return s.energy_offset_mhz - d.probe_detuning_mhz;
    case Role::rydberg_lower: return s.energy_offset_mhz - d.probe_detuning_mhz - d.coupling_detuning_mhz;
    case Role::rydberg_upper:
        return s.energy_offset_mhz - d.probe_detuning_mhz - d.coupling_detuning_mhz - d.rf_detuning_mhz;
    }
    return 0.0;
}

/// Coherence damping rate (MHz) of a non-ground sublevel against the ground manifold.
double coherence_rate(Role role, const DecayModel& decay)
{
    return 0.5 * (decay.rate(role) + decay.dephasing_mhz + decay.ground_mhz);
}

} // namespace

double DecayModel::rate(Role role) const
{
    switch (role) {
    case Role::ground: return ground_mhz;
    case Role::intermediate: return intermediate_mhz;
    case Role::rydberg_lower: return rydberg_lower_mhz;
    case Role::rydberg_upper: return rydberg_upper_mhz;
    }
    return 0.0;
}

void DecayModel::validate() const
{
    for (double r : {ground_mhz, intermediate_mhz, rydberg_lower_mhz, rydberg_upper_mhz, dephasing_mhz})
        if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("decay rates must be finite and >= 0");
}

bool DecayModel::all_zero() const
{
    return ground_mhz == 0.0 && intermediate_mhz == 0.0 && rydberg_lower_mhz == 0.0 && rydberg_upper_mhz == 0.0 &&
           dephasing_mhz == 0.0;
}

void DriveConfig::validate(const StateBasis& basis) const
{
    probe.validate();
    coupling.validate();
    rf.validate();
    require_roles(probe, Role::ground, Role::intermediate);
    require_roles(coupling, Role::intermediate, Role::rydberg_lower);
    require_roles(rf, Role::rydberg_lower, Role::rydberg_upper);
    for (double d : {probe_detuning_mhz, coupling_detuning_mhz, rf_detuning_mhz})
        if (!std::isfinite(d)) throw InvalidArgument("detunings must be finite");
    if (ground_populations.empty()) return;
    if (ground_populations.size() != basis.count(Role::ground))
        throw InvalidArgument("ground_populations needs one weight per ground sublevel (" +
                              std::to_string(basis.count(Role::ground)) + ")");
    double sum = 0.0;
    for (double p : ground_populations) {
        if (!(p >= 0.0)) throw InvalidArgument("ground populations must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("ground populations must sum to 1");
}

std::vector<double> DriveConfig::resolved_ground_populations(const StateBasis& basis) const
{
    if (!ground_populations.empty()) return ground_populations;
    const auto n = basis.count(Role::ground);
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

// Weak probe ----------------------------------------------------------------

WeakProbeSolver::WeakProbeSolver(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay)
{
    drive.validate(basis);
    decay.validate();

    const FieldSpec* dressing[] = {&drive.coupling, &drive.rf};
    const Eigen::MatrixXcd full = field_terms(basis, dressing);

    const auto [g_first, g_last] = basis.range(Role::ground);
    const auto ng = static_cast<Eigen::Index>(g_last - g_first);
    const auto first_excited = static_cast<Eigen::Index>(g_last);
    const auto ne = static_cast<Eigen::Index>(basis.size()) - first_excited;

    interaction_ = full.block(first_excited, first_excited, ne, ne);

    probe_ = Eigen::MatrixXcd::Zero(ne, ng);
    for (const auto& c : enumerate_couplings(basis, drive.probe).couplings)
        probe_(static_cast<Eigen::Index>(c.to) - first_excited, static_cast<Eigen::Index>(c.from - g_first)) +=
            c.amplitude;

    DriveConfig at_zero = drive;
    at_zero.coupling_detuning_mhz = 0.0;
    fixed_diag_.resize(ne);
    coupling_sign_.resize(ne);
    for (Eigen::Index k = 0; k < ne; ++k) {
        const Sublevel& s = basis[static_cast<std::size_t>(first_excited + k)];
        fixed_diag_[k] = kTwoPi * std::complex<double>(frame_energy(s, at_zero), -coherence_rate(s.role, decay));
        coupling_sign_[k] = (s.role == Role::rydberg_lower || s.role == Role::rydberg_upper) ? 1.0 : 0.0;
    }
    for (Eigen::Index g = 0; g < ng; ++g)
        ground_energy_.push_back(kTwoPi * basis[g_first + static_cast<std::size_t>(g)].energy_offset_mhz);
    ground_weight_ = drive.resolved_ground_populations(basis);
    lossless_ = decay.all_zero();
}

std::complex<double> WeakProbeSolver::susceptibility(double coupling_detuning_mhz) const
{
    const Eigen::Index ne = interaction_.rows();
    Eigen::MatrixXcd h = interaction_;
    for (Eigen::Index k = 0; k < ne; ++k)
        h(k, k) += fixed_diag_[k] - kTwoPi * coupling_detuning_mhz * coupling_sign_[k];

    std::complex<double> chi = 0.0;
    std::optional<double> factored_for;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    for (std::size_t g = 0; g < ground_weight_.size(); ++g) {
        if (ground_weight_[g] == 0.0) continue;
        const auto col = static_cast<Eigen::Index>(g);
        if (probe_.col(col).squaredNorm() == 0.0) continue;
        if (!factored_for || *factored_for != ground_energy_[g]) {
            Eigen::MatrixXcd shifted = h;
            shifted.diagonal().array() -= ground_energy_[g];
            lu.compute(shifted);
            factored_for = ground_energy_[g];
            if (!(lu.rcond() > 1e-14))
                throw SingularSystem(lossless_ ? "weak-probe system is singular; set a non-zero decay rate"
                                               : "weak-probe system is singular");
        }
        const Eigen::VectorXcd y = lu.solve(probe_.col(col));
        chi += ground_weight_[g] * probe_.col(col).dot(y);
    }
    if (!std::isfinite(chi.real()) || !std::isfinite(chi.imag()))
        throw SingularSystem("weak-probe solution is not finite; set a non-zero decay rate");
    return chi;
}

std::complex<double> weak_probe_response(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay)
{
    return WeakProbeSolver(basis, drive, decay).susceptibility(drive.coupling_detuning_mhz);
}

// Lindblad ------------------------------------------------------------------

Eigen::MatrixXcd steady_state_lindblad(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay,
                                       std::optional<std::vector<double>> initial_populations)
{
    if (basis.size() > kMaxLindbladStates)
        throw SizeLimitExceeded("Lindblad solver accepts at most " + std::to_string(kMaxLindbladStates) +
                                " states, got " + std::to_string(basis.size()));
    drive.validate(basis);
    decay.validate();

    const auto n = static_cast<Eigen::Index>(basis.size());
    const FieldSpec* all_fields[] = {&drive.probe, &drive.coupling, &drive.rf};
    Eigen::MatrixXcd h = field_terms(basis, all_fields);
    for (Eigen::Index k = 0; k < n; ++k) h(k, k) = kTwoPi * frame_energy(basis[static_cast<std::size_t>(k)], drive);

    // Column-major vectorization: rho(i, j) -> i + j * n.
    const Eigen::Index n2 = n * n;
    Eigen::MatrixXcd liouvillian = Eigen::MatrixXcd::Zero(n2, n2);
    auto at = [n](Eigen::Index i, Eigen::Index j) { return i + j * n; };
    const std::complex<double> I(0.0, 1.0);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k) {
                if (h(i, k) != 0.0) liouvillian(at(i, j), at(k, j)) -= I * h(i, k);
                if (h(k, j) != 0.0) liouvillian(at(i, j), at(i, k)) += I * h(k, j);
            }

    // Jump |a><b| with rate r.
    auto add_jump = [&](Eigen::Index a, Eigen::Index b, double r) {
        if (r == 0.0) return;
        liouvillian(at(a, a), at(b, b)) += r;
        for (Eigen::Index k = 0; k < n; ++k) {
            liouvillian(at(b, k), at(b, k)) -= 0.5 * r;
            liouvillian(at(k, b), at(k, b)) -= 0.5 * r;
        }
    };

    const auto [g_first, g_last] = basis.range(Role::ground);
    const auto ng = static_cast<Eigen::Index>(g_last - g_first);
    for (std::size_t s = g_last; s < basis.size(); ++s) {
        const Sublevel& x = basis[s];
        const double gamma = kTwoPi * decay.rate(x.role);
        std::vector<Eigen::Index> targets;
        for (std::size_t g = g_first; g < g_last; ++g) {
            const Sublevel& y = basis[g];
            if (std::abs(x.f.twice() - y.f.twice()) <= 2 && std::abs(x.m.twice() - y.m.twice()) <= 2 &&
                (x.m.twice() - y.m.twice()) % 2 == 0)
                targets.push_back(static_cast<Eigen::Index>(g));
        }
        if (targets.empty())
            for (std::size_t g = g_first; g < g_last; ++g) targets.push_back(static_cast<Eigen::Index>(g));
        for (auto g : targets) add_jump(g, static_cast<Eigen::Index>(s), gamma / static_cast<double>(targets.size()));

        const double dephase = kTwoPi * decay.dephasing_mhz;
        if (dephase > 0.0) {
            const auto xi = static_cast<Eigen::Index>(s);
            // sqrt(r)|x><x|: the population is unchanged, coherences decay at r/2.
            for (Eigen::Index k = 0; k < n; ++k) {
                if (k == xi) continue;
                liouvillian(at(xi, k), at(xi, k)) -= 0.5 * dephase;
                liouvillian(at(k, xi), at(k, xi)) -= 0.5 * dephase;
            }
        }
    }
    if (decay.ground_mhz > 0.0)
        for (Eigen::Index a = 0; a < ng; ++a)
            for (Eigen::Index b = 0; b < ng; ++b)
                add_jump(g_first + a, g_first + b, kTwoPi * decay.ground_mhz / static_cast<double>(ng));

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(liouvillian);
    lu.setThreshold(1e-11);
    const Eigen::MatrixXcd kernel = lu.kernel();
    const Eigen::Index dim = (lu.rank() == n2) ? 0 : kernel.cols();
    if (dim == 0) throw ContractViolation("Liouvillian has no steady state");

    Eigen::VectorXcd vec_rho;
    if (dim == 1) {
        vec_rho = kernel.col(0);
    } else {
        if (!initial_populations)
            throw DegenerateSteadyState("steady state is not unique (" + std::to_string(dim) +
                                        "-dimensional); pass initial populations");
        if (initial_populations->size() != basis.size())
            throw InvalidArgument("initial populations need one entry per basis state");
        Eigen::FullPivLU<Eigen::MatrixXcd> left(liouvillian.adjoint());
        left.setThreshold(1e-11);
        const Eigen::MatrixXcd conserved = left.kernel();
        if (conserved.cols() != dim) throw ContractViolation("left and right steady-state spaces differ in dimension");
        Eigen::VectorXcd rho0 = Eigen::VectorXcd::Zero(n2);
        for (Eigen::Index k = 0; k < n; ++k) rho0[at(k, k)] = (*initial_populations)[static_cast<std::size_t>(k)];
        const Eigen::MatrixXcd overlap = conserved.adjoint() * kernel;
        vec_rho = kernel * overlap.fullPivLu().solve(conserved.adjoint() * rho0);
    }

    Eigen::MatrixXcd rho(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) rho(i, j) = vec_rho[at(i, j)];
    const std::complex<double> trace = rho.trace();
    if (std::abs(trace) < 1e-300) throw ContractViolation("steady state has zero trace");
    rho /= trace;

    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8) throw ContractViolation("steady state is not Hermitian");
    rho = 0.5 * (rho + rho.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> spectrum(rho, Eigen::EigenvaluesOnly);
    if (spectrum.eigenvalues().minCoeff() < -1e-8) throw ContractViolation("steady state is not positive semidefinite");
    return rho;
}

std::complex<double> probe_susceptibility(const StateBasis& basis, const DriveConfig& drive, const Eigen::MatrixXcd& rho)
{
    if (!(drive.probe.rabi_mhz > 0.0)) throw InvalidArgument("probe Rabi frequency must be > 0");
    std::complex<double> sum = 0.0;
    for (const auto& c : enumerate_couplings(basis, drive.probe).couplings)
        sum += std::conj(c.amplitude) * rho(static_cast<Eigen::Index>(c.to), static_cast<Eigen::Index>(c.from));
    return -2.0 * sum / (kTwoPi * drive.probe.rabi_mhz);
}

// Scan ----------------------------------------------------------------------

std::vector<double> linear_grid(double start, double stop, std::size_t points)
{
    if (points == 0) return {};
    if (points == 1) return {start};
    std::vector<double> out(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = start + step * static_cast<double>(i);
    out.back() = stop;
    return out;
}

SpectrumSeries scan_spectrum(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay,
                             std::span<const double> grid, const ScanOptions& options)
{
    if (grid.empty()) throw InvalidArgument("scan grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidArgument("scan grid must be strictly increasing");
    if (!(options.optical_depth >= 0.0)) throw InvalidArgument("optical depth must be >= 0");

    DriveConfig bare = drive;
    bare.coupling.rabi_mhz = 0.0;
    bare.rf.rabi_mhz = 0.0;
    const double reference = weak_probe_response(basis, bare, decay).imag();
    if (!(reference > 0.0)) throw InvalidArgument("the probe field does not drive any transition");

    const WeakProbeSolver solver(basis, drive, decay);
    SpectrumSeries series;
    series.detunings.assign(grid.begin(), grid.end());
    series.absorption.assign(grid.size(), 0.0);
    series.reference_absorption = reference;
    series.optical_depth = options.optical_depth;

    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < grid.size(); i += stride)
            series.absorption[i] = solver.susceptibility(grid[i]).imag() / reference;
    };
    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, grid.size());
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> threads;
        for (std::size_t t = 0; t < jobs; ++t)
            threads.emplace_back([&, t] {
                try {
                    work(t, jobs);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : threads) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    series.transmission.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        series.transmission[i] = std::exp(-options.optical_depth * series.absorption[i]);
    series.peaks = find_peaks(series.detunings, series.transmission, options.peak_prominence);
    return series;
}

std::vector<double> find_peaks(std::span<const double> x, std::span<const double> y, double prominence)
{
    if (x.size() != y.size()) throw InvalidArgument("find_peaks: x and y differ in length");
    const std::size_t n = y.size();
    std::vector<double> peaks;
    if (n < 3) return peaks;
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    const double range = *hi - *lo;
    if (!(range > 0.0)) return peaks;

    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(y[i] > y[i - 1])) {
            ++i;
            continue;
        }
        std::size_t j = i; // plateau end
        while (j + 1 < n && y[j + 1] == y[i]) ++j;
        if (j + 1 >= n || !(y[j + 1] < y[i])) {
            i = j + 1;
            continue;
        }
        const double height = y[i];
        double left_min = height;
        for (std::size_t k = i; k-- > 0;) {
            if (y[k] > height) break;
            left_min = std::min(left_min, y[k]);
        }
        double right_min = height;
        for (std::size_t k = j + 1; k < n; ++k) {
            if (y[k] > height) break;
            right_min = std::min(right_min, y[k]);
        }
        const double prom = (height - std::max(left_min, right_min)) / range;
        if (prom > prominence) {
            double position = 0.5 * (x[i] + x[j]);
            if (i == j) {
                const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
                const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
                const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
                const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
                const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
                if (a < 0.0) position = std::clamp(-b / (2.0 * a), x0, x2);
            }
            peaks.push_back(position + 0.0); // no -0
        }
        i = j + 1;
    }
    return peaks;
}

void write_csv(const SpectrumSeries& series, std::ostream& out)
{
    out << "# frequencies in MHz (linear); absorption normalized to the probe-only line; optical_depth="
        << series.optical_depth << "\n";
    out << "detuning_mhz,absorption,transmission\n";
    out << std::setprecision(12);
    for (std::size_t i = 0; i < series.detunings.size(); ++i)
        out << series.detunings[i] << ',' << series.absorption[i] << ',' << series.transmission[i] << '\n';
}

nlohmann::json to_json(const SpectrumSeries& series)
{
    return {{"units", "MHz (linear frequency)"},
            {"optical_depth", series.optical_depth},
            {"reference_absorption", series.reference_absorption},
            {"detuning_mhz", series.detunings},
            {"absorption", series.absorption},
            {"transmission", series.transmission},
            {"peaks_mhz", series.peaks}};
}

} // namespace rydberg
