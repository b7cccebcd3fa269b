#pragma once

#include "rydberg_eit/couplings.hpp"
#include "rydberg_eit/model.hpp"
#include "rydberg_eit/spectrum.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rydberg {

struct ScanSpec {
    double start_mhz = -300.0;
    double stop_mhz = 300.0;
    std::size_t points = 601;

    std::vector<double> grid() const { return linear_grid(start_mhz, stop_mhz, points); }
    friend bool operator==(const ScanSpec&, const ScanSpec&) = default;
};

/// Everything a CLI run needs. Frequencies are linear MHz throughout.
struct RunConfig {
    Scenario scenario = scenario_full();
    DriveConfig drive;
    DecayModel decay;
    ScanSpec scan;
    double optical_depth = 1.0;
    double peak_prominence = 0.01;
    double cluster_tolerance_rel = 1e-6; ///< multiplied by the RF Rabi frequency
    ReachabilityRule reachability = ReachabilityRule::selection_rules;
    std::vector<FieldKind> diagram_fields{FieldKind::probe, FieldKind::coupling, FieldKind::rf};
    std::string output_path;
    std::string output_format; ///< csv, json, or empty for the command default

    /// Absolute clustering tolerance in MHz.
    double cluster_tolerance_mhz() const;
    OpticalPolarizations optical_polarizations() const
    {
        return {drive.probe.polarization, drive.coupling.polarization, reachability};
    }
    void validate() const; ///< throws ConfigError

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a flat "key = value" document. Keys are dotted paths
/// (e.g. rf.rabi_mhz); "[section]" lines prefix the keys that follow. Lines
/// starting with '#' or ';' are comments. Unknown keys, malformed values and
/// duplicates throw ConfigError. The `scenario` key is applied before any
/// level.* keys regardless of position.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Applies one key = value assignment on top of an existing config.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Serializes every key; parse_config(write_config(c)) == c.
std::string write_config(const RunConfig& config);

} // namespace rydberg
