#include "rydberg_eit/eigensolver.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

using rydberg::jacobi_eigh;

namespace {

Eigen::MatrixXcd random_hermitian(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    return (a + a.adjoint()) / 2.0;
}

} // namespace

TEST_CASE("Jacobi agrees with Eigen on random Hermitian matrices")
{
    for (int n : {1, 2, 3, 7, 20, 60}) {
        const Eigen::MatrixXcd h = random_hermitian(n, 11u + static_cast<unsigned>(n));
        const auto mine = jacobi_eigh(h);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(h);
        CHECK((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-11 * std::max(1.0, h.norm()));
        const Eigen::MatrixXcd v = mine.vectors;
        CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).norm() <= 1e-12 * n);
        CHECK((h * v - v * mine.values.asDiagonal()).norm() <= 1e-11 * std::max(1.0, h.norm()));
        for (int k = 1; k < n; ++k) CHECK(mine.values[k - 1] <= mine.values[k]);
    }
}

TEST_CASE("degenerate and diagonal input")
{
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(5, 5);
    auto r = jacobi_eigh(z);
    CHECK(r.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.sweeps <= 1);

    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    d(2, 2) = 2.0;
    r = jacobi_eigh(d);
    CHECK(r.values[0] == -1.0);
    CHECK(r.values[1] == 2.0);
    CHECK(r.values[2] == 3.0);

    // Pauli y: purely imaginary off-diagonal element.
    Eigen::MatrixXcd y(2, 2);
    y << 0.0, std::complex<double>(0.0, -1.0), std::complex<double>(0.0, 1.0), 0.0;
    r = jacobi_eigh(y);
    CHECK(r.values[0] == doctest::Approx(-1.0));
    CHECK(r.values[1] == doctest::Approx(1.0));
    CHECK((y * r.vectors - r.vectors * r.values.asDiagonal()).norm() < 1e-14);
}
