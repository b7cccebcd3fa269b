#include "rydberg_eit/model.hpp"

#include "rydberg_eit/angular.hpp"
#include "rydberg_eit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace rydberg {

std::string_view to_string(Role r)
{
    switch (r) {
    case Role::ground: return "ground";
    case Role::intermediate: return "intermediate";
    case Role::rydberg_lower: return "rydberg_lower";
    case Role::rydberg_upper: return "rydberg_upper";
    }
    return "?";
}

Role role_from_string(std::string_view name)
{
    for (Role r : kRoles)
        if (to_string(r) == name) return r;
    throw InvalidArgument("unknown level role '" + std::string(name) + "'");
}

std::vector<HalfInteger> hyperfine_manifolds(HalfInteger j, HalfInteger nuclear_spin)
{
    std::vector<HalfInteger> out;
    const int lo = std::abs(j.twice() - nuclear_spin.twice());
    const int hi = j.twice() + nuclear_spin.twice();
    for (int t = lo; t <= hi; t += 2) out.push_back(HalfInteger::from_twice(t));
    return out;
}

void Scenario::validate() const
{
    for (Role r : kRoles) {
        const auto& lvl = level(r);
        if (lvl.role != r) throw InvalidScenario("level '" + lvl.label + "' is stored under the wrong role");
        if (lvl.j.twice() < 0) throw InvalidScenario("level '" + lvl.label + "' has negative J");
        const auto& fs = f_values(r);
        if (fs.empty()) throw InvalidScenario("no hyperfine manifolds included for " + std::string(to_string(r)));
        const auto allowed = hyperfine_manifolds(lvl.j, nuclear_spin);
        for (auto f : fs)
            if (std::find(allowed.begin(), allowed.end(), f) == allowed.end())
                throw InvalidScenario("F = " + f.str() + " is not a hyperfine component of " + lvl.label);
        auto sorted = fs;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidScenario("duplicate F in " + std::string(to_string(r)));
        if (const auto& bound = max_abs_m[index_of(r)]; bound && bound->twice() < 0)
            throw InvalidScenario("negative |m_F| bound for " + std::string(to_string(r)));
    }
    if (nuclear_spin.twice() < 0) throw InvalidScenario("negative nuclear spin");
}

bool Scenario::is_complete() const
{
    for (Role r : kRoles) {
        if (max_abs_m[index_of(r)]) return false;
        auto fs = f_values(r);
        std::sort(fs.begin(), fs.end());
        if (fs != hyperfine_manifolds(level(r).j, nuclear_spin)) return false;
    }
    return true;
}

namespace {

Scenario cesium_ladder(std::string name, std::vector<HalfInteger> lower_f, std::vector<HalfInteger> upper_f)
{
    Scenario s;
    s.name = std::move(name);
    s.nuclear_spin = HalfInteger::from_twice(7);
    s.levels = {FineLevel{"6S1/2", HalfInteger::from_twice(1), Role::ground},
                FineLevel{"6P3/2", HalfInteger::from_twice(3), Role::intermediate},
                FineLevel{"52D5/2", HalfInteger::from_twice(5), Role::rydberg_lower},
                FineLevel{"53P3/2", HalfInteger::from_twice(3), Role::rydberg_upper}};
    s.included_f = {std::vector<HalfInteger>{4}, std::vector<HalfInteger>{5}, std::move(lower_f), std::move(upper_f)};
    return s;
}

} // namespace

std::string_view to_string(ReachabilityRule r)
{
    return r == ReachabilityRule::amplitude ? "amplitude" : "selection_rules";
}

ReachabilityRule reachability_rule_from_string(std::string_view name)
{
    if (name == "selection_rules") return ReachabilityRule::selection_rules;
    if (name == "amplitude") return ReachabilityRule::amplitude;
    throw InvalidArgument("unknown reachability rule '" + std::string(name) + "' (expected selection_rules or amplitude)");
}

Scenario scenario_full() { return cesium_ladder("full", {1, 2, 3, 4, 5, 6}, {2, 3, 4, 5}); }

Scenario scenario_truncated() { return cesium_ladder("truncated", {4, 5, 6}, {3, 4, 5}); }

Scenario scenario_preset(std::string_view name)
{
    if (name == "full") return scenario_full();
    if (name == "truncated") return scenario_truncated();
    throw InvalidArgument("unknown scenario preset '" + std::string(name) + "' (expected full or truncated)");
}

std::optional<std::size_t> StateBasis::find(Role role, HalfInteger f, HalfInteger m) const
{
    if (auto it = index_.find({role, f.twice(), m.twice()}); it != index_.end()) return it->second;
    return std::nullopt;
}

std::size_t StateBasis::reachable_count(Role role) const
{
    const auto [first, last] = range(role);
    std::size_t n = 0;
    for (std::size_t i = first; i < last; ++i) n += optical_[i] != 0;
    return n;
}

StateBasis build_basis(const Scenario& scenario, const OpticalPolarizations& optical)
{
    scenario.validate();

    StateBasis basis;
    basis.scenario_ = scenario;
    basis.polarizations_ = optical;

    for (Role r : kRoles) {
        const std::size_t first = basis.states_.size();
        auto fs = scenario.f_values(r);
        std::sort(fs.begin(), fs.end());
        const auto& bound = scenario.max_abs_m[index_of(r)];
        for (auto f : fs) {
            double offset = 0.0;
            if (auto it = scenario.energy_offset_mhz.find({r, f}); it != scenario.energy_offset_mhz.end())
                offset = it->second;
            for (int tm = -f.twice(); tm <= f.twice(); tm += 2) {
                if (bound && std::abs(tm) > bound->twice()) continue;
                const auto m = HalfInteger::from_twice(tm);
                basis.index_.emplace(std::make_tuple(r, f.twice(), tm), basis.states_.size());
                basis.states_.push_back(Sublevel{r, f, m, offset});
            }
        }
        if (basis.states_.size() == first)
            throw InvalidScenario("the |m_F| bound leaves no sublevels in " + std::string(to_string(r)));
        basis.ranges_[index_of(r)] = {first, basis.states_.size()};
    }

    // Breadth-first closure: ground -> intermediate (probe) -> rydberg_lower (coupling).
    basis.optical_.assign(basis.states_.size(), 0);
    std::deque<std::size_t> frontier;
    for (std::size_t i = basis.range(Role::ground).first; i < basis.range(Role::ground).second; ++i) {
        basis.optical_[i] = 1;
        frontier.push_back(i);
    }
    const auto probe = spherical_components(optical.probe);
    const auto coupling = spherical_components(optical.coupling);
    const auto I = scenario.nuclear_spin;

    while (!frontier.empty()) {
        const std::size_t from = frontier.front();
        frontier.pop_front();
        const Sublevel& s = basis.states_[from];
        Role next;
        const SphericalComponents* pol;
        if (s.role == Role::ground) {
            next = Role::intermediate;
            pol = &probe;
        } else if (s.role == Role::intermediate) {
            next = Role::rydberg_lower;
            pol = &coupling;
        } else {
            continue;
        }
        const auto [first, last] = basis.range(next);
        for (std::size_t to = first; to < last; ++to) {
            if (basis.optical_[to]) continue;
            const Sublevel& t = basis.states_[to];
            const int dm2 = t.m.twice() - s.m.twice();
            if (dm2 % 2 != 0 || std::abs(dm2) > 2) continue;
            const int q = dm2 / 2;
            if (std::abs((*pol)[q + 1]) <= kPolarizationZero) continue;
            if (!angular::triangle(s.f, HalfInteger(1), t.f)) continue;
            if (optical.rule == ReachabilityRule::amplitude &&
                angular::dipole_angular_factor(basis.j_of(s.role), s.f, s.m, basis.j_of(next), t.f, t.m, q, I) == 0.0)
                continue;
            basis.optical_[to] = 1;
            frontier.push_back(to);
        }
    }
    return basis;
}

} // namespace rydberg
