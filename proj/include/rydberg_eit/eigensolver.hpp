#pragma once

#include <Eigen/Dense>

namespace rydberg {

struct HermitianEigen {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXcd vectors; ///< column k belongs to values[k]
    int sweeps = 0;
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot element and then applies
/// the real symmetric Jacobi rotation, so the accumulated transformation stays
/// exactly unitary up to rounding. Converges quadratically; dense matrices of a
/// few hundred rows are the intended size. Only the lower triangle is trusted
/// to be consistent with the upper one; callers check hermiticity.
HermitianEigen jacobi_eigh(const Eigen::MatrixXcd& matrix, int max_sweeps = 100);

} // namespace rydberg
