#pragma once

#include "rydberg_eit/model.hpp"
#include "rydberg_eit/polarization.hpp"

#include <json.hpp>

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace rydberg {

enum class FieldKind : std::uint8_t { probe, coupling, rf };

std::string_view to_string(FieldKind k);
FieldKind field_kind_from_string(std::string_view name); ///< throws InvalidArgument

/// One driving field. Rabi frequencies are "radial" linear frequencies in MHz:
/// the coupling between two sublevels is (rabi_mhz / 2) times the dimensionless
/// angular amplitude, and 2 pi is applied only when Hamiltonians are assembled
/// in angular units.
struct FieldSpec {
    FieldKind kind = FieldKind::probe;
    double rabi_mhz = 0.0;
    Vec3 polarization = Vec3::unit_z();
    Role lower = Role::ground;
    Role upper = Role::intermediate;

    /// Throws InvalidArgument for negative Rabi frequency or non-unit polarization.
    void validate() const;

    static FieldSpec probe(double rabi_mhz, Vec3 polarization = Vec3::unit_z());
    static FieldSpec coupling(double rabi_mhz, Vec3 polarization = Vec3::unit_z());
    static FieldSpec rf(double rabi_mhz, Vec3 polarization = Vec3::unit_z());

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct Coupling {
    std::size_t from = 0; ///< state in field.lower
    std::size_t to = 0;   ///< state in field.upper
    int q = 0;            ///< mF(to) - mF(from)
    /// e_q * dipole_angular_factor(from -> to, q). Real for polarizations in the x-z plane.
    std::complex<double> amplitude;
    double strength = 0.0; ///< |amplitude|^2
};

struct CouplingSet {
    FieldSpec field;
    std::vector<Coupling> couplings;

    std::size_t size() const { return couplings.size(); }
};

/// Every dipole-allowed (lower, upper) pair of the field's roles with a
/// non-vanishing polarization component, ordered by (from, to).
CouplingSet enumerate_couplings(const StateBasis& basis, const FieldSpec& field);

using CouplingFilter = std::function<bool(const Coupling&)>;

std::size_t count_transitions(const CouplingSet& set, const CouplingFilter& filter = {});

/// Keeps couplings whose lower-role state is reachable by the optical chain.
CouplingFilter reachable_origin(const StateBasis& basis);

// Transition diagram -------------------------------------------------------

struct DiagramNode {
    std::size_t id = 0;
    Role role = Role::ground;
    HalfInteger f;
    HalfInteger m;
    double vertical_offset = 0.0;
    bool optically_reachable = false;
};

struct DiagramEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    FieldKind field = FieldKind::probe;
    int q = 0;
    std::complex<double> amplitude;
    double strength = 0.0; ///< normalized so the strongest edge of each field is 1
    bool origin_reachable = false;
};

struct DiagramGraph {
    std::string scenario;
    std::vector<DiagramNode> nodes;
    std::vector<DiagramEdge> edges;
};

DiagramGraph export_diagram(const StateBasis& basis, const std::vector<CouplingSet>& sets);

nlohmann::json to_json(const DiagramGraph& graph);

} // namespace rydberg
