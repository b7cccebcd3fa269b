#pragma once

#include "rydberg_eit/couplings.hpp"
#include "rydberg_eit/model.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <optional>
#include <span>
#include <vector>

namespace rydberg {

/// Rotating-frame RF Hamiltonian restricted to the two Rydberg levels, in MHz
/// (angular frequency / 2 pi). Rows/columns follow `basis_slice`: the lower
/// Rydberg states first, then the upper ones.
struct RfHamiltonian {
    std::vector<std::size_t> basis_slice;
    std::size_t lower_count = 0;
    Eigen::MatrixXcd matrix;
    double rf_rabi_mhz = 0.0;
};

/// H[l,u] = (rabi/2) e_q A(l -> u, q) with Hermitian completion. The diagonal
/// carries hyperfine energy offsets and -rf_detuning on the upper level; both
/// are zero by default, leaving a purely bipartite matrix.
RfHamiltonian build_rf_hamiltonian(const StateBasis& basis, const FieldSpec& rf, double rf_detuning_mhz = 0.0);

/// Relative clustering tolerance used when none is given: 1e-6 of the RF Rabi frequency.
inline constexpr double kDefaultClusterTolerance = 1e-6;

/// Absolute clustering tolerance in MHz for a given RF Rabi frequency. Falls
/// back to 1e-6 MHz when the RF field is off.
double default_cluster_tolerance(double rf_rabi_mhz);

struct DressedResult {
    std::vector<double> eigenvalues; ///< ascending, MHz
    Eigen::MatrixXcd eigenvectors;   ///< columns, in the RfHamiltonian ordering
    std::vector<double> unique;      ///< cluster means, MHz
    double cluster_tolerance = 0.0;  ///< MHz
};

/// Diagonalizes with the in-house Jacobi solver and checks the contract:
/// Hermitian input (1e-12 relative), unitary eigenvectors (1e-9), residual
/// |Hv - lv| <= 1e-9 |H|. Violations throw ContractViolation.
DressedResult diagonalize(const RfHamiltonian& h, std::optional<double> cluster_tolerance_mhz = std::nullopt);

/// Seed-anchored greedy clustering of ascending values: a value joins the
/// current cluster while it lies within `tolerance` of the cluster's first
/// member. Each cluster is represented by its mean. Throws InvalidArgument for
/// tolerance <= 0.
std::vector<double> unique_eigenvalues(std::span<const double> sorted_values, double tolerance);

/// Eigenvalues (ascending, MHz) of the RF Hamiltonian of the bare
/// fine-structure levels J_lower <-> J_upper with the quantization axis along
/// the RF polarization, so only q = 0 couplings appear.
std::vector<double> fine_structure_reference(HalfInteger j_lower, HalfInteger j_upper, const FieldSpec& rf);

/// Largest |<e|P0|e>|^(1/2) over intermediate sublevels e, where P0 projects
/// onto dressed states with |eigenvalue| <= tolerance and |e> is the
/// coupling-laser image of the intermediate sublevel in the lower Rydberg
/// manifold. Zero means the central dressed states are optically dark.
double central_cluster_optical_overlap(const StateBasis& basis, const RfHamiltonian& h, const DressedResult& dressed,
                                       const FieldSpec& coupling);

nlohmann::json to_json(const DressedResult& result);

} // namespace rydberg
