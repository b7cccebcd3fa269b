#include "rydberg_eit/eigensolver.hpp"

#include "rydberg_eit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace rydberg {

namespace {

double off_diagonal_norm2(const Eigen::MatrixXcd& a)
{
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) sum += std::norm(a(i, j));
    return sum;
}

} // namespace

HermitianEigen jacobi_eigh(const Eigen::MatrixXcd& matrix, int max_sweeps)
{
    if (matrix.rows() != matrix.cols()) throw InvalidArgument("jacobi_eigh: matrix must be square");
    const Eigen::Index n = matrix.rows();

    Eigen::MatrixXcd a = matrix;
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
    const double scale2 = std::max(a.squaredNorm(), std::numeric_limits<double>::min());
    const double eps = std::numeric_limits<double>::epsilon();

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= eps * eps * scale2) break;
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const std::complex<double> apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Negligible pivot relative to both diagonals: zero it outright.
                if (mag < eps * 1e-2 * (std::abs(app) + std::abs(aqq)) && sweep > 3) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const std::complex<double> phase = apq / mag; // e^{i phi}
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on columns p, q.
                const std::complex<double> gpp = c;
                const std::complex<double> gpq = s;
                const std::complex<double> gqp = -s * std::conj(phase);
                const std::complex<double> gqq = c * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const auto akp = a(k, p);
                    const auto akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const auto apk = a(p, k);
                    const auto aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const auto vkp = v(k, p);
                    const auto vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
            }
        }
    }
    if (off_diagonal_norm2(a) > 1e4 * eps * eps * scale2)
        throw ContractViolation("jacobi_eigh: no convergence after " + std::to_string(max_sweeps) + " sweeps");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
        out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    out.sweeps = sweep;
    return out;
}

} // namespace rydberg
