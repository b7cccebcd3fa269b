#include "rydberg_eit/config.hpp"

#include "rydberg_eit/errors.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace rydberg {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    s = trim(s);
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected)
{
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + " (expected " +
                      std::string(expected) + ")");
}

double to_double(std::string_view key, std::string_view value)
{
    value = trim(value);
    if (!value.empty() && value.front() == '+') value.remove_prefix(1);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty()) bad_value(key, value, "a number");
    return out;
}

std::size_t to_size(std::string_view key, std::string_view value)
{
    value = trim(value);
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || value.empty())
        bad_value(key, value, "a non-negative integer");
    return out;
}

HalfInteger to_half(std::string_view key, std::string_view value)
{
    try {
        return HalfInteger::parse(trim(value));
    } catch (const InvalidArgument&) {
        bad_value(key, value, "an integer or half-integer such as 7/2");
    }
}

Vec3 to_vec3(std::string_view key, std::string_view value)
{
    const auto parts = split_list(value);
    if (parts.size() != 3) bad_value(key, value, "three comma-separated components");
    try {
        return Vec3{to_double(key, parts[0]), to_double(key, parts[1]), to_double(key, parts[2])}.normalized();
    } catch (const InvalidArgument&) {
        bad_value(key, value, "a non-zero vector");
    }
}

std::string fmt(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

FieldSpec& field_of(RunConfig& c, FieldKind k)
{
    switch (k) {
    case FieldKind::probe: return c.drive.probe;
    case FieldKind::coupling: return c.drive.coupling;
    case FieldKind::rf: break;
    }
    return c.drive.rf;
}

const FieldSpec& field_of(const RunConfig& c, FieldKind k) { return field_of(const_cast<RunConfig&>(c), k); }

void apply_scenario(RunConfig& c, std::string_view value)
{
    value = trim(value);
    if (value == "full" || value == "truncated") {
        c.scenario = scenario_preset(value);
    } else if (value == "custom") {
        c.scenario.name = "custom";
    } else {
        bad_value("scenario", value, "full, truncated or custom");
    }
}

void apply_level(RunConfig& c, Role role, std::string_view rest, std::string_view key, std::string_view value)
{
    auto& lvl = c.scenario.levels[index_of(role)];
    c.scenario.name = "custom";
    if (rest == "label") {
        lvl.label = std::string(trim(value));
    } else if (rest == "j") {
        lvl.j = to_half(key, value);
    } else if (rest == "f") {
        std::vector<HalfInteger> fs;
        for (auto part : split_list(value)) fs.push_back(to_half(key, part));
        c.scenario.included_f[index_of(role)] = std::move(fs);
    } else if (rest == "max_abs_m") {
        if (trim(value) == "none")
            c.scenario.max_abs_m[index_of(role)].reset();
        else
            c.scenario.max_abs_m[index_of(role)] = to_half(key, value);
    } else if (rest.starts_with("offset_mhz.")) {
        const auto f = to_half(key, rest.substr(std::string_view("offset_mhz.").size()));
        c.scenario.energy_offset_mhz[{role, f}] = to_double(key, value);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

} // namespace

double RunConfig::cluster_tolerance_mhz() const
{
    return drive.rf.rabi_mhz > 0.0 ? cluster_tolerance_rel * drive.rf.rabi_mhz : cluster_tolerance_rel;
}

void RunConfig::validate() const
{
    try {
        const StateBasis basis = build_basis(scenario, optical_polarizations());
        drive.validate(basis);
        decay.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (scan.points == 0) throw ConfigError("scan.points must be >= 1");
    if (scan.points > 1 && !(scan.stop_mhz > scan.start_mhz)) throw ConfigError("scan.stop_mhz must exceed scan.start_mhz");
    if (!(optical_depth >= 0.0)) throw ConfigError("spectrum.optical_depth must be >= 0");
    if (!(peak_prominence > 0.0 && peak_prominence < 1.0)) throw ConfigError("spectrum.peak_prominence must lie in (0, 1)");
    if (!(cluster_tolerance_rel > 0.0)) throw ConfigError("dressing.cluster_tolerance_rel must be > 0");
    if (!output_format.empty() && output_format != "csv" && output_format != "json")
        throw ConfigError("output.format must be csv or json");
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value)
{
    key = trim(key);
    const auto dot = key.find('.');
    const std::string_view head = key.substr(0, dot);
    const std::string_view rest = dot == std::string_view::npos ? std::string_view{} : key.substr(dot + 1);

    if (key == "scenario") return apply_scenario(c, value);
    if (key == "nuclear_spin") {
        c.scenario.nuclear_spin = to_half(key, value);
        c.scenario.name = "custom";
        return;
    }
    if (head == "level") {
        const auto dot2 = rest.find('.');
        if (dot2 == std::string_view::npos) throw ConfigError("unknown key '" + std::string(key) + "'");
        Role role;
        try {
            role = role_from_string(rest.substr(0, dot2));
        } catch (const InvalidArgument&) {
            throw ConfigError("unknown key '" + std::string(key) + "'");
        }
        return apply_level(c, role, rest.substr(dot2 + 1), key, value);
    }
    if (head == "probe" || head == "coupling" || head == "rf") {
        FieldSpec& f = field_of(c, field_kind_from_string(head));
        if (rest == "rabi_mhz") {
            f.rabi_mhz = to_double(key, value);
        } else if (rest == "polarization") {
            f.polarization = to_vec3(key, value);
        } else {
            throw ConfigError("unknown key '" + std::string(key) + "'");
        }
        return;
    }
    if (head == "drive") {
        if (rest == "probe_detuning_mhz") c.drive.probe_detuning_mhz = to_double(key, value);
        else if (rest == "coupling_detuning_mhz") c.drive.coupling_detuning_mhz = to_double(key, value);
        else if (rest == "rf_detuning_mhz") c.drive.rf_detuning_mhz = to_double(key, value);
        else if (rest == "ground_populations") {
            c.drive.ground_populations.clear();
            if (trim(value) != "uniform")
                for (auto part : split_list(value)) c.drive.ground_populations.push_back(to_double(key, part));
        } else {
            throw ConfigError("unknown key '" + std::string(key) + "'");
        }
        return;
    }
    if (head == "decay") {
        if (rest == "ground_mhz") c.decay.ground_mhz = to_double(key, value);
        else if (rest == "intermediate_mhz") c.decay.intermediate_mhz = to_double(key, value);
        else if (rest == "rydberg_lower_mhz") c.decay.rydberg_lower_mhz = to_double(key, value);
        else if (rest == "rydberg_upper_mhz") c.decay.rydberg_upper_mhz = to_double(key, value);
        else if (rest == "dephasing_mhz") c.decay.dephasing_mhz = to_double(key, value);
        else throw ConfigError("unknown key '" + std::string(key) + "'");
        return;
    }
    if (key == "scan.start_mhz") c.scan.start_mhz = to_double(key, value);
    else if (key == "scan.stop_mhz") c.scan.stop_mhz = to_double(key, value);
    else if (key == "scan.points") c.scan.points = to_size(key, value);
    else if (key == "spectrum.optical_depth") c.optical_depth = to_double(key, value);
    else if (key == "spectrum.peak_prominence") c.peak_prominence = to_double(key, value);
    else if (key == "dressing.cluster_tolerance_rel") c.cluster_tolerance_rel = to_double(key, value);
    else if (key == "optical.reachability") {
        try {
            c.reachability = reachability_rule_from_string(value);
        } catch (const InvalidArgument&) {
            bad_value(key, value, "selection_rules or amplitude");
        }
    }
    else if (key == "diagram.fields") {
        c.diagram_fields.clear();
        for (auto part : split_list(value)) {
            try {
                c.diagram_fields.push_back(field_kind_from_string(part));
            } catch (const InvalidArgument&) {
                bad_value(key, value, "a list of probe, coupling, rf");
            }
        }
    } else if (key == "output.path") c.output_path = std::string(trim(value));
    else if (key == "output.format") c.output_format = std::string(trim(value));
    else throw ConfigError("unknown key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text)
{
    std::vector<std::pair<std::string, std::string>> entries;
    std::set<std::string> seen;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        const auto raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (!section.empty()) key = section + "." + key;
        if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'");
        entries.emplace_back(std::move(key), std::string(trim(line.substr(eq + 1))));
    }

    RunConfig config;
    for (const auto& [k, v] : entries)
        if (k == "scenario") apply_setting(config, k, v);
    for (const auto& [k, v] : entries)
        if (k != "scenario") apply_setting(config, k, v);
    return config;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string write_config(const RunConfig& c)
{
    std::ostringstream out;
    out << "# rydberg-eit run configuration; all frequencies are linear MHz\n";
    const std::string& name = c.scenario.name;
    const bool preset = (name == "full" || name == "truncated") && c.scenario == scenario_preset(name);
    out << "scenario = " << (preset ? name : std::string("custom")) << "\n";
    if (!preset) out << "nuclear_spin = " << c.scenario.nuclear_spin.str() << "\n";
    for (Role r : kRoles) {
        if (preset) break;
        const std::string prefix = "level." + std::string(to_string(r)) + ".";
        const auto& lvl = c.scenario.level(r);
        out << prefix << "label = " << lvl.label << "\n";
        out << prefix << "j = " << lvl.j.str() << "\n";
        out << prefix << "f = ";
        const auto& fs = c.scenario.f_values(r);
        for (std::size_t i = 0; i < fs.size(); ++i) out << (i ? ", " : "") << fs[i].str();
        out << "\n";
        const auto& bound = c.scenario.max_abs_m[index_of(r)];
        out << prefix << "max_abs_m = " << (bound ? bound->str() : std::string("none")) << "\n";
        for (const auto& [rf, offset] : c.scenario.energy_offset_mhz)
            if (rf.first == r) out << prefix << "offset_mhz." << rf.second.str() << " = " << fmt(offset) << "\n";
    }
    for (FieldKind k : {FieldKind::probe, FieldKind::coupling, FieldKind::rf}) {
        const FieldSpec& f = field_of(c, k);
        out << to_string(k) << ".rabi_mhz = " << fmt(f.rabi_mhz) << "\n";
        out << to_string(k) << ".polarization = " << fmt(f.polarization.x) << ", " << fmt(f.polarization.y) << ", "
            << fmt(f.polarization.z) << "\n";
    }
    out << "drive.probe_detuning_mhz = " << fmt(c.drive.probe_detuning_mhz) << "\n";
    out << "drive.coupling_detuning_mhz = " << fmt(c.drive.coupling_detuning_mhz) << "\n";
    out << "drive.rf_detuning_mhz = " << fmt(c.drive.rf_detuning_mhz) << "\n";
    out << "drive.ground_populations = ";
    if (c.drive.ground_populations.empty()) out << "uniform";
    for (std::size_t i = 0; i < c.drive.ground_populations.size(); ++i)
        out << (i ? ", " : "") << fmt(c.drive.ground_populations[i]);
    out << "\n";
    out << "decay.ground_mhz = " << fmt(c.decay.ground_mhz) << "\n";
    out << "decay.intermediate_mhz = " << fmt(c.decay.intermediate_mhz) << "\n";
    out << "decay.rydberg_lower_mhz = " << fmt(c.decay.rydberg_lower_mhz) << "\n";
    out << "decay.rydberg_upper_mhz = " << fmt(c.decay.rydberg_upper_mhz) << "\n";
    out << "decay.dephasing_mhz = " << fmt(c.decay.dephasing_mhz) << "\n";
    out << "scan.start_mhz = " << fmt(c.scan.start_mhz) << "\n";
    out << "scan.stop_mhz = " << fmt(c.scan.stop_mhz) << "\n";
    out << "scan.points = " << c.scan.points << "\n";
    out << "spectrum.optical_depth = " << fmt(c.optical_depth) << "\n";
    out << "spectrum.peak_prominence = " << fmt(c.peak_prominence) << "\n";
    out << "dressing.cluster_tolerance_rel = " << fmt(c.cluster_tolerance_rel) << "\n";
    out << "optical.reachability = " << to_string(c.reachability) << "\n";
    out << "diagram.fields = ";
    for (std::size_t i = 0; i < c.diagram_fields.size(); ++i) out << (i ? ", " : "") << to_string(c.diagram_fields[i]);
    out << "\n";
    if (!c.output_path.empty()) out << "output.path = " << c.output_path << "\n";
    if (!c.output_format.empty()) out << "output.format = " << c.output_format << "\n";
    return out.str();
}

} // namespace rydberg
