#pragma once

#include "rydberg_eit/half_integer.hpp"
#include "rydberg_eit/polarization.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace rydberg {

/// Position of a fine-structure level in the four-level ladder.
enum class Role : std::uint8_t { ground = 0, intermediate = 1, rydberg_lower = 2, rydberg_upper = 3 };

inline constexpr std::array<Role, 4> kRoles{Role::ground, Role::intermediate, Role::rydberg_lower,
                                            Role::rydberg_upper};

constexpr std::size_t index_of(Role r) { return static_cast<std::size_t>(r); }
std::string_view to_string(Role r);
Role role_from_string(std::string_view name); ///< throws InvalidArgument

struct FineLevel {
    std::string label;
    HalfInteger j;
    Role role = Role::ground;

    friend bool operator==(const FineLevel&, const FineLevel&) = default;
};

/// F values |J - I| .. J + I, ascending.
std::vector<HalfInteger> hyperfine_manifolds(HalfInteger j, HalfInteger nuclear_spin);

/// Which fine-structure levels, hyperfine manifolds and sublevels take part in a simulation.
struct Scenario {
    std::string name;
    std::array<FineLevel, 4> levels; ///< indexed by Role
    HalfInteger nuclear_spin;
    std::array<std::vector<HalfInteger>, 4> included_f;
    std::array<std::optional<HalfInteger>, 4> max_abs_m;
    /// Energy of a hyperfine manifold relative to its fine-structure level, in MHz.
    /// Absent entries are 0 (degenerate hyperfine structure).
    std::map<std::pair<Role, HalfInteger>, double> energy_offset_mhz;

    const FineLevel& level(Role r) const { return levels[index_of(r)]; }
    const std::vector<HalfInteger>& f_values(Role r) const { return included_f[index_of(r)]; }

    /// Throws InvalidScenario when an included F is outside |J - I| .. J + I, a
    /// role has no manifolds, a level carries the wrong role, or an m bound is negative.
    void validate() const;

    /// Every hyperfine manifold of every level is present and no m bound applies.
    bool is_complete() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// 6S1/2(F=4) -> 6P3/2(F=5) -> 52D5/2(F=1..6) <-> 53P3/2(F=2..5), Cs I = 7/2.
Scenario scenario_full();
/// As scenario_full but 52D5/2 restricted to F=4,5,6 and 53P3/2 to F=3,4,5.
Scenario scenario_truncated();
/// Looks up "full" or "truncated"; throws InvalidArgument otherwise.
Scenario scenario_preset(std::string_view name);

struct Sublevel {
    Role role = Role::ground;
    HalfInteger f;
    HalfInteger m;
    double energy_offset_mhz = 0.0;

    friend bool operator==(const Sublevel&, const Sublevel&) = default;
};

/// How a step of the optical chain decides that a sublevel is populated.
///
/// `selection_rules`: |dF| <= 1 and dm = q with a non-zero polarization
/// component. `amplitude`: additionally the hyperfine dipole factor must be
/// non-zero, which also drops the dF = 0, m = 0 -> 0 pi lines.
enum class ReachabilityRule : std::uint8_t { selection_rules, amplitude };

std::string_view to_string(ReachabilityRule r);
ReachabilityRule reachability_rule_from_string(std::string_view name); ///< throws InvalidArgument

/// Polarizations of the probe and coupling lasers, used to decide which
/// sublevels the optical chain can populate.
struct OpticalPolarizations {
    Vec3 probe = Vec3::unit_z();
    Vec3 coupling = Vec3::unit_z();
    ReachabilityRule rule = ReachabilityRule::selection_rules;
};

/// Ordered sublevel basis. Roles appear in ladder order; within a role states
/// are sorted by (F, mF).
class StateBasis {
public:
    const Scenario& scenario() const { return scenario_; }
    std::size_t size() const { return states_.size(); }
    const Sublevel& operator[](std::size_t i) const { return states_[i]; }
    std::span<const Sublevel> states() const { return states_; }

    std::optional<std::size_t> find(Role role, HalfInteger f, HalfInteger m) const;

    /// Half-open index range [first, second) occupied by a role.
    std::pair<std::size_t, std::size_t> range(Role role) const { return ranges_[index_of(role)]; }
    std::size_t count(Role role) const { return range(role).second - range(role).first; }

    HalfInteger j_of(Role role) const { return scenario_.level(role).j; }
    HalfInteger j_of(std::size_t state) const { return j_of(states_[state].role); }

    /// Reachable from the ground manifold through probe then coupling transitions.
    bool optically_reachable(std::size_t i) const { return optical_[i] != 0; }
    std::size_t reachable_count(Role role) const;

    const OpticalPolarizations& optical_polarizations() const { return polarizations_; }

private:
    friend StateBasis build_basis(const Scenario&, const OpticalPolarizations&);

    Scenario scenario_;
    OpticalPolarizations polarizations_;
    std::vector<Sublevel> states_;
    std::vector<char> optical_;
    std::array<std::pair<std::size_t, std::size_t>, 4> ranges_{};
    std::map<std::tuple<Role, int, int>, std::size_t> index_;
};

/// Throws InvalidScenario (scenario invariants, or a manifold emptied by the m bound).
StateBasis build_basis(const Scenario& scenario, const OpticalPolarizations& optical = {});

} // namespace rydberg
