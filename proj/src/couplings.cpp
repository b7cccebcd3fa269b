#include "rydberg_eit/couplings.hpp"

#include "rydberg_eit/angular.hpp"
#include "rydberg_eit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace rydberg {

std::string_view to_string(FieldKind k)
{
    switch (k) {
    case FieldKind::probe: return "probe";
    case FieldKind::coupling: return "coupling";
    case FieldKind::rf: return "rf";
    }
    return "?";
}

FieldKind field_kind_from_string(std::string_view name)
{
    for (FieldKind k : {FieldKind::probe, FieldKind::coupling, FieldKind::rf})
        if (to_string(k) == name) return k;
    throw InvalidArgument("unknown field '" + std::string(name) + "'");
}

void FieldSpec::validate() const
{
    if (!(rabi_mhz >= 0.0) || !std::isfinite(rabi_mhz))
        throw InvalidArgument(std::string(to_string(kind)) + ": Rabi frequency must be finite and >= 0");
    if (std::abs(polarization.norm() - 1.0) > 1e-12)
        throw InvalidArgument(std::string(to_string(kind)) + ": polarization must be a unit vector");
    if (index_of(upper) != index_of(lower) + 1)
        throw InvalidArgument(std::string(to_string(kind)) + ": a field must connect adjacent ladder levels");
}

FieldSpec FieldSpec::probe(double rabi_mhz, Vec3 polarization)
{
    return {FieldKind::probe, rabi_mhz, polarization.normalized(), Role::ground, Role::intermediate};
}

FieldSpec FieldSpec::coupling(double rabi_mhz, Vec3 polarization)
{
    return {FieldKind::coupling, rabi_mhz, polarization.normalized(), Role::intermediate, Role::rydberg_lower};
}

FieldSpec FieldSpec::rf(double rabi_mhz, Vec3 polarization)
{
    return {FieldKind::rf, rabi_mhz, polarization.normalized(), Role::rydberg_lower, Role::rydberg_upper};
}

CouplingSet enumerate_couplings(const StateBasis& basis, const FieldSpec& field)
{
    field.validate();
    const auto e = spherical_components(field.polarization);
    const auto I = basis.scenario().nuclear_spin;
    const auto j_lower = basis.j_of(field.lower);
    const auto j_upper = basis.j_of(field.upper);
    const auto [lo_first, lo_last] = basis.range(field.lower);
    const auto [up_first, up_last] = basis.range(field.upper);

    CouplingSet set{field, {}};
    for (std::size_t from = lo_first; from < lo_last; ++from) {
        const Sublevel& s = basis[from];
        // Only Delta m in {-1, 0, +1} can be dipole allowed; look them up directly.
        for (int q = -1; q <= 1; ++q) {
            const auto ep = e[q + 1];
            if (std::abs(ep) <= kPolarizationZero) continue;
            const auto m_to = s.m + q;
            for (std::size_t to = up_first; to < up_last; ++to) {
                const Sublevel& t = basis[to];
                if (t.m != m_to) continue;
                const double a = angular::dipole_angular_factor(j_lower, s.f, s.m, j_upper, t.f, t.m, q, I);
                if (a == 0.0) continue;
                const std::complex<double> amp = ep * a;
                set.couplings.push_back(Coupling{from, to, q, amp, std::norm(amp)});
            }
        }
    }
    std::sort(set.couplings.begin(), set.couplings.end(),
              [](const Coupling& a, const Coupling& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    return set;
}

std::size_t count_transitions(const CouplingSet& set, const CouplingFilter& filter)
{
    if (!filter) return set.couplings.size();
    return static_cast<std::size_t>(std::count_if(set.couplings.begin(), set.couplings.end(), filter));
}

CouplingFilter reachable_origin(const StateBasis& basis)
{
    return [&basis](const Coupling& c) { return basis.optically_reachable(c.from); };
}

DiagramGraph export_diagram(const StateBasis& basis, const std::vector<CouplingSet>& sets)
{
    DiagramGraph graph;
    graph.scenario = basis.scenario().name;

    // Levels stacked by role; manifolds inside a Rydberg level are offset only
    // for legibility since they are degenerate.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Sublevel& s = basis[i];
        const auto& fs = basis.scenario().f_values(s.role);
        auto sorted = fs;
        std::sort(sorted.begin(), sorted.end());
        const auto rank = std::find(sorted.begin(), sorted.end(), s.f) - sorted.begin();
        const double offset = static_cast<double>(index_of(s.role)) + 0.12 * static_cast<double>(rank);
        graph.nodes.push_back(DiagramNode{i, s.role, s.f, s.m, offset, basis.optically_reachable(i)});
    }

    for (const auto& set : sets) {
        double peak = 0.0;
        for (const auto& c : set.couplings) peak = std::max(peak, c.strength);
        for (const auto& c : set.couplings)
            graph.edges.push_back(DiagramEdge{c.from, c.to, set.field.kind, c.q, c.amplitude, c.strength / peak,
                                              basis.optically_reachable(c.from)});
    }
    return graph;
}

nlohmann::json to_json(const DiagramGraph& graph)
{
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes) {
        nodes.push_back({{"id", n.id},
                         {"role", to_string(n.role)},
                         {"F", n.f.value()},
                         {"mF", n.m.value()},
                         {"vertical_offset", n.vertical_offset},
                         {"optically_reachable", n.optically_reachable}});
    }
    nlohmann::json edges = nlohmann::json::array();
    std::map<std::string, std::size_t> per_field;
    for (const auto& e : graph.edges) {
        edges.push_back({{"from", e.from},
                         {"to", e.to},
                         {"field", to_string(e.field)},
                         {"q", e.q},
                         {"amplitude", e.amplitude.real()},
                         {"amplitude_imag", e.amplitude.imag()},
                         {"strength", e.strength},
                         {"origin_reachable", e.origin_reachable}});
        ++per_field[std::string(to_string(e.field))];
    }
    return {{"scenario", graph.scenario},
            {"strength_convention", "amplitude squared, normalized to the strongest line of each field"},
            {"edge_counts", per_field},
            {"nodes", std::move(nodes)},
            {"edges", std::move(edges)}};
}

} // namespace rydberg
