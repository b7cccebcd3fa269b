#include "rydberg_eit/dressing.hpp"

#include "rydberg_eit/angular.hpp"
#include "rydberg_eit/eigensolver.hpp"
#include "rydberg_eit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rydberg {

RfHamiltonian build_rf_hamiltonian(const StateBasis& basis, const FieldSpec& rf, double rf_detuning_mhz)
{
    if (rf.lower != Role::rydberg_lower || rf.upper != Role::rydberg_upper)
        throw InvalidArgument("the RF field must connect rydberg_lower and rydberg_upper");

    const auto [lo_first, lo_last] = basis.range(Role::rydberg_lower);
    const auto [up_first, up_last] = basis.range(Role::rydberg_upper);
    RfHamiltonian h;
    h.rf_rabi_mhz = rf.rabi_mhz;
    h.lower_count = lo_last - lo_first;
    for (std::size_t i = lo_first; i < lo_last; ++i) h.basis_slice.push_back(i);
    for (std::size_t i = up_first; i < up_last; ++i) h.basis_slice.push_back(i);

    const auto n = static_cast<Eigen::Index>(h.basis_slice.size());
    h.matrix = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto state = h.basis_slice[static_cast<std::size_t>(k)];
        double diag = basis[state].energy_offset_mhz;
        if (basis[state].role == Role::rydberg_upper) diag -= rf_detuning_mhz;
        h.matrix(k, k) = diag;
    }
    if (rf.rabi_mhz == 0.0) return h;

    const CouplingSet set = enumerate_couplings(basis, rf);
    for (const auto& c : set.couplings) {
        const auto row = static_cast<Eigen::Index>(c.from - lo_first);
        const auto col = static_cast<Eigen::Index>(h.lower_count + (c.to - up_first));
        const std::complex<double> element = 0.5 * rf.rabi_mhz * c.amplitude;
        h.matrix(col, row) = element;
        h.matrix(row, col) = std::conj(element);
    }
    return h;
}

double default_cluster_tolerance(double rf_rabi_mhz)
{
    return rf_rabi_mhz > 0.0 ? kDefaultClusterTolerance * rf_rabi_mhz : kDefaultClusterTolerance;
}

std::vector<double> unique_eigenvalues(std::span<const double> sorted_values, double tolerance)
{
    if (!(tolerance > 0.0)) throw InvalidArgument("cluster tolerance must be > 0");
    std::vector<double> out;
    std::size_t i = 0;
    while (i < sorted_values.size()) {
        const double seed = sorted_values[i];
        double sum = 0.0;
        std::size_t n = 0;
        while (i < sorted_values.size() && sorted_values[i] - seed <= tolerance) {
            sum += sorted_values[i];
            ++n;
            ++i;
        }
        out.push_back(sum / static_cast<double>(n));
    }
    return out;
}

DressedResult diagonalize(const RfHamiltonian& h, std::optional<double> cluster_tolerance_mhz)
{
    const Eigen::MatrixXcd& m = h.matrix;
    const double norm = m.norm();
    if ((m - m.adjoint()).norm() > 1e-12 * std::max(norm, 1.0))
        throw ContractViolation("RF Hamiltonian is not Hermitian");

    const HermitianEigen eig = jacobi_eigh(m);
    const auto n = m.rows();

    const Eigen::MatrixXcd gram = eig.vectors.adjoint() * eig.vectors;
    if ((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9)
        throw ContractViolation("eigenvector matrix is not unitary");
    for (Eigen::Index k = 0; k < n; ++k) {
        const double residual = (m * eig.vectors.col(k) - eig.values[k] * eig.vectors.col(k)).norm();
        if (residual > 1e-9 * std::max(norm, 1e-300))
            throw ContractViolation("eigenpair residual " + std::to_string(residual) + " exceeds contract");
    }

    DressedResult out;
    out.eigenvalues.assign(eig.values.data(), eig.values.data() + n);
    out.eigenvectors = eig.vectors;
    out.cluster_tolerance = cluster_tolerance_mhz.value_or(default_cluster_tolerance(h.rf_rabi_mhz));
    out.unique = unique_eigenvalues(out.eigenvalues, out.cluster_tolerance);
    return out;
}

std::vector<double> fine_structure_reference(HalfInteger j_lower, HalfInteger j_upper, const FieldSpec& rf)
{
    rf.validate();
    const int n_lower = j_lower.twice() + 1;
    const int n_upper = j_upper.twice() + 1;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_lower + n_upper, n_lower + n_upper);
    for (int a = 0; a < n_lower; ++a) {
        const auto m = HalfInteger::from_twice(-j_lower.twice() + 2 * a);
        for (int b = 0; b < n_upper; ++b) {
            const auto mu = HalfInteger::from_twice(-j_upper.twice() + 2 * b);
            if (mu != m) continue;
            const double element = 0.5 * rf.rabi_mhz * angular::fine_dipole_angular_factor(j_lower, m, j_upper, mu, 0);
            h(n_lower + b, a) = element;
            h(a, n_lower + b) = element;
        }
    }
    const HermitianEigen eig = jacobi_eigh(h);
    return {eig.values.data(), eig.values.data() + eig.values.size()};
}

double central_cluster_optical_overlap(const StateBasis& basis, const RfHamiltonian& h, const DressedResult& dressed,
                                       const FieldSpec& coupling)
{
    const CouplingSet set = enumerate_couplings(basis, coupling);
    const std::size_t lo_first = basis.range(Role::rydberg_lower).first;
    const auto [e_first, e_last] = basis.range(Role::intermediate);
    const auto n = static_cast<Eigen::Index>(h.basis_slice.size());

    std::vector<Eigen::Index> central;
    for (std::size_t k = 0; k < dressed.eigenvalues.size(); ++k)
        if (std::abs(dressed.eigenvalues[k]) <= dressed.cluster_tolerance) central.push_back(static_cast<Eigen::Index>(k));

    double worst = 0.0;
    for (std::size_t e = e_first; e < e_last; ++e) {
        Eigen::VectorXcd image = Eigen::VectorXcd::Zero(n);
        for (const auto& c : set.couplings)
            if (c.from == e) image[static_cast<Eigen::Index>(c.to - lo_first)] += c.amplitude;
        if (image.norm() == 0.0) continue;
        image.normalize();
        double weight = 0.0;
        for (auto k : central) weight += std::norm(dressed.eigenvectors.col(k).dot(image));
        worst = std::max(worst, std::sqrt(weight));
    }
    return worst;
}

nlohmann::json to_json(const DressedResult& result)
{
    return {{"units", "MHz (linear frequency)"},
            {"eigenvalues", result.eigenvalues},
            {"unique", result.unique},
            {"unique_count", result.unique.size()},
            {"cluster_tolerance_mhz", result.cluster_tolerance}};
}

} // namespace rydberg
