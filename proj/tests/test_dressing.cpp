#include "rydberg_eit/dressing.hpp"
#include "rydberg_eit/errors.hpp"
#include "rydberg_eit/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace rydberg;

namespace {

constexpr double kRabi = 200.0;

DressedResult dress(const Scenario& s, const Vec3& pol = Vec3::unit_z(), double rabi = kRabi)
{
    return diagonalize(build_rf_hamiltonian(build_basis(s), FieldSpec::rf(rabi, pol)));
}

std::vector<double> repeated(const std::vector<double>& v, int times)
{
    std::vector<double> out;
    for (double x : v)
        for (int k = 0; k < times; ++k) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("RF Hamiltonian structure")
{
    const StateBasis b = build_basis(scenario_full());
    const RfHamiltonian h = build_rf_hamiltonian(b, FieldSpec::rf(kRabi));
    REQUIRE(h.matrix.rows() == 80);
    CHECK(h.lower_count == 48);
    int nonzero = 0;
    for (Eigen::Index i = 0; i < 80; ++i) {
        CHECK(h.matrix(i, i) == 0.0);
        for (Eigen::Index j = 0; j < 80; ++j) {
            if (h.matrix(i, j) == 0.0) continue;
            ++nonzero;
            const bool li = i < 48, lj = j < 48;
            CHECK(li != lj);
            CHECK(h.matrix(i, j) == std::conj(h.matrix(j, i)));
        }
    }
    CHECK(nonzero == 2 * 84);

    const RfHamiltonian off = build_rf_hamiltonian(b, FieldSpec::rf(0.0));
    CHECK(off.matrix.norm() == 0.0);

    const RfHamiltonian x = build_rf_hamiltonian(b, FieldSpec::rf(kRabi, Vec3::unit_x()));
    CHECK((x.matrix - h.matrix).norm() > 1.0);
    CHECK(x.matrix.norm() == doctest::Approx(h.matrix.norm()).epsilon(1e-12));

    CHECK_THROWS_AS(build_rf_hamiltonian(b, FieldSpec::coupling(1.0)), InvalidArgument);
}

TEST_CASE("unique eigenvalue counts")
{
    const auto full = dress(scenario_full());
    const auto trunc = dress(scenario_truncated());
    CHECK(full.unique.size() == 5);
    CHECK(trunc.unique.size() == 25);
    CHECK(full.cluster_tolerance == doctest::Approx(1e-6 * kRabi));

    // The 25 clusters are well separated: the count holds over decades of tolerance.
    for (double rel : {1e-10, 1e-8, 1e-6, 1e-4}) {
        CHECK(unique_eigenvalues(trunc.eigenvalues, rel * kRabi).size() == 25);
        CHECK(unique_eigenvalues(full.eigenvalues, rel * kRabi).size() == 5);
    }

    const auto zero = dress(scenario_full(), Vec3::unit_z(), 0.0);
    REQUIRE(zero.unique.size() == 1);
    CHECK(zero.unique[0] == 0.0);
}

TEST_CASE("seed-anchored clustering")
{
    const std::vector<double> zeros{0.0, 0.0, 0.0};
    CHECK(unique_eigenvalues(zeros, 1e-6) == std::vector<double>{0.0});
    const std::vector<double> chain{0.0, 0.5, 1.0};
    const auto c = unique_eigenvalues(chain, 0.6);
    REQUIRE(c.size() == 2);
    CHECK(c[0] == doctest::Approx(0.25));
    CHECK(c[1] == 1.0);
    CHECK(unique_eigenvalues(std::vector<double>{}, 1.0).empty());
    CHECK_THROWS_AS(unique_eigenvalues(chain, 0.0), InvalidArgument);
    CHECK_THROWS_AS(unique_eigenvalues(chain, -1.0), InvalidArgument);
}

TEST_CASE("chiral symmetry of the spectrum")
{
    for (const Scenario& s : {scenario_full(), scenario_truncated()})
        for (double angle : {0.0, 30.0, 90.0}) {
            const auto r = dress(s, Vec3::in_xz_plane(angle));
            const std::size_t n = r.eigenvalues.size();
            for (std::size_t k = 0; k < n; ++k)
                CHECK(std::abs(r.eigenvalues[k] + r.eigenvalues[n - 1 - k]) <= 1e-9 * kRabi);
        }
}

TEST_CASE("fine-structure reduction")
{
    const Scenario s = scenario_full();
    const auto r = dress(s);
    const auto oracle = oracle::fine_structure_block_eigenvalues(HalfInteger::from_twice(5), HalfInteger::from_twice(3), kRabi);
    const auto reference = fine_structure_reference(HalfInteger::from_twice(5), HalfInteger::from_twice(3), FieldSpec::rf(kRabi));
    REQUIRE(oracle.size() == 10);
    REQUIRE(reference.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(oracle[i] - reference[i]) <= 1e-9 * kRabi);

    const auto expected = repeated(oracle, 8);
    REQUIRE(expected.size() == r.eigenvalues.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(expected[i] - r.eigenvalues[i]) <= 1e-9 * kRabi);

    std::vector<double> positive;
    for (double u : r.unique)
        if (u > 1e-6 * kRabi) positive.push_back(u);
    REQUIRE(positive.size() == 2);
    CHECK(std::abs(positive[1] / positive[0] - std::sqrt(6.0) / 2.0) <= 1e-9);

    const auto none = fine_structure_reference(HalfInteger::from_twice(5), HalfInteger::from_twice(3), FieldSpec::rf(0.0));
    CHECK(std::all_of(none.begin(), none.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("rotation invariance of the full system")
{
    const auto base = dress(scenario_full());
    for (double angle : {30.0, 45.0, 90.0, 123.0}) {
        const auto r = dress(scenario_full(), Vec3::in_xz_plane(angle));
        REQUIRE(r.unique.size() == base.unique.size());
        for (std::size_t i = 0; i < base.unique.size(); ++i) CHECK(std::abs(r.unique[i] - base.unique[i]) <= 1e-9 * kRabi);
    }
    const auto y = dress(scenario_full(), Vec3{0.0, 1.0, 0.0});
    REQUIRE(y.unique.size() == 5);
}

TEST_CASE("linear scaling in the RF Rabi frequency")
{
    const auto a = dress(scenario_truncated(), Vec3::unit_z(), 100.0);
    const auto b = dress(scenario_truncated(), Vec3::unit_z(), 300.0);
    CHECK(a.unique.size() == b.unique.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) CHECK(std::abs(3.0 * a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-9 * 300.0);
}

TEST_CASE("central dressed states are optically dark")
{
    const StateBasis b = build_basis(scenario_full());
    const RfHamiltonian h = build_rf_hamiltonian(b, FieldSpec::rf(kRabi));
    const auto r = diagonalize(h);
    CHECK(central_cluster_optical_overlap(b, h, r, FieldSpec::coupling(20.0)) <= 1e-9);

    const RfHamiltonian hx = build_rf_hamiltonian(b, FieldSpec::rf(kRabi, Vec3::unit_x()));
    CHECK(central_cluster_optical_overlap(b, hx, diagonalize(hx), FieldSpec::coupling(20.0)) > 0.1);
}

TEST_CASE("diagonalize enforces the Hermitian contract")
{
    RfHamiltonian h = build_rf_hamiltonian(build_basis(scenario_truncated()), FieldSpec::rf(kRabi));
    h.matrix(0, h.matrix.cols() - 1) += 1.0;
    CHECK_THROWS_AS(diagonalize(h), ContractViolation);
    CHECK_THROWS_AS(diagonalize(build_rf_hamiltonian(build_basis(scenario_truncated()), FieldSpec::rf(kRabi)), 0.0),
                    InvalidArgument);
}

TEST_CASE("dressed result serializes")
{
    const auto r = dress(scenario_full());
    const auto doc = to_json(r);
    CHECK(doc["unique"].size() == 5);
    CHECK(doc["eigenvalues"].size() == 80);
    CHECK(doc["unique_count"] == 5);
}
