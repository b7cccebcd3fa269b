#pragma once

#include "rydberg_eit/couplings.hpp"
#include "rydberg_eit/model.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <complex>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace rydberg {

/// Population decay rates (linewidths) per level in MHz, linear frequency.
///
/// Excited sublevels decay into the ground manifold. `ground_mhz` relaxes the
/// ground sublevels toward a uniform mixture, and `dephasing_mhz` dephases
/// every non-ground sublevel. The defaults use the Cs D2 natural linewidth for
/// the intermediate level and a narrow width for the Rydberg levels.
struct DecayModel {
    double ground_mhz = 0.0;
    double intermediate_mhz = 5.2;
    double rydberg_lower_mhz = 0.01;
    double rydberg_upper_mhz = 0.01;
    double dephasing_mhz = 0.0;

    double rate(Role role) const;
    void validate() const; ///< all rates finite and >= 0
    bool all_zero() const;

    friend bool operator==(const DecayModel&, const DecayModel&) = default;
};

/// Field strengths, polarizations and detunings (MHz, linear) of a run.
/// Detunings follow the ladder: the intermediate level sits at -probe, the
/// lower Rydberg level at -(probe + coupling), the upper at -(probe + coupling + rf)
/// in the rotating frame.
struct DriveConfig {
    FieldSpec probe = FieldSpec::probe(0.5);
    FieldSpec coupling = FieldSpec::coupling(20.0);
    FieldSpec rf = FieldSpec::rf(200.0);
    double probe_detuning_mhz = 0.0;
    double coupling_detuning_mhz = 0.0;
    double rf_detuning_mhz = 0.0;
    /// One weight per ground sublevel (basis order). Empty means uniform.
    std::vector<double> ground_populations;

    void validate(const StateBasis& basis) const;
    std::vector<double> resolved_ground_populations(const StateBasis& basis) const;

    friend bool operator==(const DriveConfig&, const DriveConfig&) = default;
};

/// First-order (in the probe) steady-state response, exact in the coupling and
/// RF fields.
///
/// For each ground sublevel g the excited-state amplitudes solve
/// (H_eff - E_g) y_g = b_g, where H_eff is the non-Hermitian single-excitation
/// Hamiltonian (rotating-frame energies minus i Gamma/2) and b_g holds the
/// probe angular amplitudes out of g. The susceptibility is
/// sum_g p_g b_g^dagger y_g in units of 1/(2 pi MHz); Im >= 0 is absorption.
/// It does not depend on the probe Rabi frequency. Valid while the probe Rabi
/// frequency is small against the intermediate linewidth.
class WeakProbeSolver {
public:
    WeakProbeSolver(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay);

    /// Susceptibility at the given coupling detuning; other detunings from the drive.
    /// Throws SingularSystem when the linear system cannot be solved.
    std::complex<double> susceptibility(double coupling_detuning_mhz) const;

private:
    Eigen::MatrixXcd interaction_; ///< coupling + RF terms among non-ground states, angular units
    Eigen::MatrixXcd probe_;       ///< b: rows non-ground states, columns ground states
    Eigen::VectorXcd fixed_diag_;  ///< offsets, probe/rf detunings and -i Gamma/2
    Eigen::VectorXd coupling_sign_; ///< 1 on Rydberg states (they move with the coupling detuning)
    std::vector<double> ground_energy_;
    std::vector<double> ground_weight_;
    bool lossless_ = false;
};

std::complex<double> weak_probe_response(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay);

/// Largest basis the dense Liouvillian solver accepts.
inline constexpr std::size_t kMaxLindbladStates = 40;

/// Steady state of the full master equation (all fields to all orders).
///
/// Excited sublevels decay into dipole-allowed ground sublevels (|dF| <= 1,
/// |dm| <= 1) with uniform branching, or uniformly into the whole ground
/// manifold when none is allowed. When the Liouvillian has a unique null
/// vector it is returned with unit trace. When the steady state is degenerate
/// (e.g. no driving fields) `initial_populations` selects the long-time limit
/// of that diagonal initial state; without it DegenerateSteadyState is thrown.
/// Throws SizeLimitExceeded above kMaxLindbladStates and ContractViolation if
/// the result is not Hermitian positive semidefinite to 1e-8.
Eigen::MatrixXcd steady_state_lindblad(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay,
                                       std::optional<std::vector<double>> initial_populations = std::nullopt);

/// The susceptibility implied by a density matrix, in the same normalization
/// as WeakProbeSolver. Requires a non-zero probe Rabi frequency.
std::complex<double> probe_susceptibility(const StateBasis& basis, const DriveConfig& drive,
                                          const Eigen::MatrixXcd& rho);

struct SpectrumSeries {
    std::vector<double> detunings;    ///< coupling detuning, MHz
    std::vector<double> absorption;   ///< Im chi / reference_absorption
    std::vector<double> transmission; ///< exp(-optical_depth * absorption)
    std::vector<double> peaks;        ///< coupling detunings of transmission maxima, MHz
    double reference_absorption = 0.0; ///< Im chi of the bare probe transition
    double optical_depth = 1.0;
};

struct ScanOptions {
    double optical_depth = 1.0;
    double peak_prominence = 0.01;
    unsigned jobs = 1;
};

/// Evenly spaced grid of `points` values from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, std::size_t points);

/// Scans the coupling detuning over `grid` (strictly increasing, non-empty).
/// Absorption is normalized to the probe-only absorption at the same probe
/// detuning, i.e. the far-detuned limit. Each grid point is solved
/// independently, so results do not depend on `jobs`.
SpectrumSeries scan_spectrum(const StateBasis& basis, const DriveConfig& drive, const DecayModel& decay,
                             std::span<const double> grid, const ScanOptions& options = {});

/// Interior local maxima whose prominence (height above the higher of the two
/// flanking minima, as a fraction of the series range) exceeds `prominence`,
/// each refined by a three-point parabola.
std::vector<double> find_peaks(std::span<const double> x, std::span<const double> y, double prominence);

void write_csv(const SpectrumSeries& series, std::ostream& out);
nlohmann::json to_json(const SpectrumSeries& series);

} // namespace rydberg
