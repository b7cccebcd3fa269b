#include "rydberg_eit/angular.hpp"
#include "rydberg_eit/errors.hpp"
#include "rydberg_eit/model.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace rydberg;

namespace {

// Fixed-point iteration over all state pairs until no flag changes.
std::vector<bool> reachable_fixpoint(const StateBasis& b, ReachabilityRule rule)
{
    std::vector<bool> flag(b.size(), false);
    for (std::size_t i = 0; i < b.size(); ++i) flag[i] = b[i].role == Role::ground;
    const auto probe = spherical_components(b.optical_polarizations().probe);
    const auto coupling = spherical_components(b.optical_polarizations().coupling);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t s = 0; s < b.size(); ++s) {
            if (!flag[s]) continue;
            for (std::size_t t = 0; t < b.size(); ++t) {
                if (flag[t]) continue;
                const bool step1 = b[s].role == Role::ground && b[t].role == Role::intermediate;
                const bool step2 = b[s].role == Role::intermediate && b[t].role == Role::rydberg_lower;
                if (!step1 && !step2) continue;
                const double dm = b[t].m.value() - b[s].m.value();
                if (std::abs(dm) > 1.0 || std::abs(b[t].f.value() - b[s].f.value()) > 1.0) continue;
                const int q = static_cast<int>(dm);
                if (std::abs((step1 ? probe : coupling)[q + 1]) <= 1e-14) continue;
                if (rule == ReachabilityRule::amplitude &&
                    angular::dipole_angular_factor(b.j_of(s), b[s].f, b[s].m, b.j_of(t), b[t].f, b[t].m, q,
                                                   b.scenario().nuclear_spin) == 0.0)
                    continue;
                flag[t] = true;
                changed = true;
            }
        }
    }
    return flag;
}

} // namespace

TEST_CASE("hyperfine manifolds")
{
    auto as_twice = [](const std::vector<HalfInteger>& v) {
        std::vector<int> out;
        for (auto x : v) out.push_back(x.twice());
        return out;
    };
    CHECK(as_twice(hyperfine_manifolds(HalfInteger::from_twice(5), HalfInteger::from_twice(7))) ==
          std::vector<int>{2, 4, 6, 8, 10, 12});
    CHECK(as_twice(hyperfine_manifolds(HalfInteger::from_twice(3), HalfInteger::from_twice(7))) ==
          std::vector<int>{4, 6, 8, 10});
    CHECK(as_twice(hyperfine_manifolds(HalfInteger::from_twice(1), HalfInteger::from_twice(1))) ==
          std::vector<int>{0, 2});
}

TEST_CASE("preset basis sizes")
{
    const StateBasis full = build_basis(scenario_full());
    const StateBasis trunc = build_basis(scenario_truncated());
    CHECK(full.size() == 100);
    CHECK(trunc.size() == 80);
    CHECK(full.count(Role::ground) == 9);
    CHECK(full.count(Role::intermediate) == 11);
    CHECK(full.count(Role::rydberg_lower) == 48);
    CHECK(full.count(Role::rydberg_upper) == 32);
    CHECK(trunc.count(Role::rydberg_lower) == 33);
    CHECK(trunc.count(Role::rydberg_upper) == 27);
    CHECK(full.scenario().nuclear_spin.twice() == 7);
    CHECK(scenario_full().is_complete() == false); // one ground and one intermediate manifold only
}

TEST_CASE("basis ordering and lookup")
{
    const StateBasis b = build_basis(scenario_full());
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        const auto& s = b[i];
        const auto& t = b[i + 1];
        CHECK(index_of(s.role) <= index_of(t.role));
        if (s.role == t.role) CHECK(std::make_pair(s.f, s.m) < std::make_pair(t.f, t.m));
        CHECK(b.find(s.role, s.f, s.m) == i);
    }
    CHECK_FALSE(b.find(Role::rydberg_lower, 7, 0).has_value());
    const StateBasis again = build_basis(scenario_full());
    CHECK(std::equal(b.states().begin(), b.states().end(), again.states().begin(), again.states().end()));
}

TEST_CASE("optical reachability under pi light")
{
    const StateBasis b = build_basis(scenario_full());
    CHECK(b.reachable_count(Role::ground) == 9);
    CHECK(b.reachable_count(Role::intermediate) == 9);
    CHECK(b.reachable_count(Role::rydberg_lower) == 27);
    CHECK(b.reachable_count(Role::rydberg_upper) == 0);
    const auto [first, last] = b.range(Role::rydberg_lower);
    for (std::size_t i = first; i < last; ++i) {
        const auto& s = b[i];
        const bool expect = s.f.twice() >= 8 && std::abs(s.m.twice()) <= 8;
        CHECK(b.optically_reachable(i) == expect);
    }
    const auto oracle = reachable_fixpoint(b, ReachabilityRule::selection_rules);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.optically_reachable(i) == oracle[i]);
}

TEST_CASE("amplitude reachability drops the dark F=5, m=0 line")
{
    const StateBasis b = build_basis(scenario_full(), {Vec3::unit_z(), Vec3::unit_z(), ReachabilityRule::amplitude});
    CHECK(b.reachable_count(Role::rydberg_lower) == 26);
    CHECK_FALSE(b.optically_reachable(*b.find(Role::rydberg_lower, 5, 0)));
    const auto oracle = reachable_fixpoint(b, ReachabilityRule::amplitude);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.optically_reachable(i) == oracle[i]);
}

TEST_CASE("reachability with rotated optical polarizations matches the fixpoint oracle")
{
    for (double angle : {30.0, 45.0, 90.0})
        for (auto rule : {ReachabilityRule::selection_rules, ReachabilityRule::amplitude}) {
            const Vec3 pol = Vec3::in_xz_plane(angle);
            const StateBasis b = build_basis(scenario_truncated(), {pol, Vec3::unit_z(), rule});
            const auto oracle = reachable_fixpoint(b, rule);
            for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.optically_reachable(i) == oracle[i]);
        }
}

TEST_CASE("removing the m restriction never shrinks the reachable set")
{
    Scenario bounded = scenario_full();
    bounded.max_abs_m[index_of(Role::intermediate)] = HalfInteger(2);
    bounded.max_abs_m[index_of(Role::rydberg_lower)] = HalfInteger(3);
    const StateBasis small = build_basis(bounded);
    const StateBasis big = build_basis(scenario_full());
    std::size_t n_small = 0;
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (!small.optically_reachable(i)) continue;
        ++n_small;
        const auto& s = small[i];
        CHECK(big.optically_reachable(*big.find(s.role, s.f, s.m)));
    }
    CHECK(n_small < 9 + 9 + 27);
}

TEST_CASE("scenario validation")
{
    Scenario s = scenario_full();
    s.included_f[index_of(Role::rydberg_lower)].push_back(7);
    CHECK_THROWS_AS(build_basis(s), InvalidScenario);

    s = scenario_full();
    s.included_f[index_of(Role::rydberg_upper)].clear();
    CHECK_THROWS_AS(build_basis(s), InvalidScenario);

    s = scenario_full();
    s.nuclear_spin = 1;
    s.included_f = {std::vector<HalfInteger>{HalfInteger::from_twice(1)}, std::vector<HalfInteger>{HalfInteger::from_twice(5)},
                    std::vector<HalfInteger>{HalfInteger::from_twice(3)}, std::vector<HalfInteger>{HalfInteger::from_twice(5)}};
    CHECK_NOTHROW(build_basis(s));
    s.max_abs_m[index_of(Role::ground)] = HalfInteger(0); // F=1/2 has no m = 0 sublevel
    CHECK_THROWS_AS(build_basis(s), InvalidScenario);

    CHECK_THROWS_AS(scenario_preset("partial"), InvalidArgument);
    CHECK(scenario_preset("truncated") == scenario_truncated());
    CHECK(role_from_string("rydberg_upper") == Role::rydberg_upper);
    CHECK_THROWS_AS(role_from_string("upper"), InvalidArgument);
}

TEST_CASE("spherical components")
{
    const auto z = spherical_components(Vec3::unit_z());
    CHECK(std::abs(z[1] - 1.0) == 0.0);
    CHECK(std::abs(z[0]) == 0.0);
    CHECK(std::abs(z[2]) == 0.0);
    const auto x = spherical_components(Vec3::unit_x());
    CHECK(std::abs(x[0] - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(x[2] + std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(x[1]) == 0.0);
    const auto d = spherical_components(Vec3{1.0, 0.0, 1.0});
    CHECK(std::norm(d[0]) + std::norm(d[1]) + std::norm(d[2]) == doctest::Approx(1.0).epsilon(1e-15));
    const auto y = spherical_components(Vec3{0.0, 1.0, 0.0});
    CHECK(std::abs(y[2] - std::complex<double>(0.0, -std::sqrt(0.5))) < 1e-15);
    CHECK_THROWS_AS(spherical_components(Vec3{}), InvalidArgument);
    const Vec3 p90 = Vec3::in_xz_plane(90.0);
    CHECK(p90 == Vec3::unit_x());
}
