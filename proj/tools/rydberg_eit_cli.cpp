// rydberg_eit: transitions | dress | spectrum | diagram | validate

#include "rydberg_eit/commands.hpp"
#include "rydberg_eit/config.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

struct Options {
    std::string config_path;
    std::string preset;
    std::string out;
    std::string format;
    unsigned jobs = 1;
    std::vector<std::string> settings;
};

void add_common(CLI::App& sub, Options& o)
{
    sub.add_option("--config", o.config_path, "Configuration file (key = value)");
    sub.add_option("--preset", o.preset, "Scenario preset")->check(CLI::IsMember({"full", "truncated"}));
    sub.add_option("--out", o.out, "Output path (default: stdout)");
    sub.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--jobs", o.jobs, "Worker threads for spectrum scans")->check(CLI::Range(1u, 1024u));
    sub.add_option("--set", o.settings, "Override a config key, e.g. --set rf.rabi_mhz=150");
}

rydberg::RunConfig resolve(const Options& o)
{
    rydberg::RunConfig config = o.config_path.empty() ? rydberg::RunConfig{} : rydberg::load_config(o.config_path);
    if (!o.preset.empty()) rydberg::apply_setting(config, "scenario", o.preset);
    for (const auto& kv : o.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw rydberg::ConfigError("--set expects key=value, got '" + kv + "'");
        rydberg::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!o.out.empty()) config.output_path = o.out;
    if (!o.format.empty()) config.output_format = o.format;
    config.validate();
    return config;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hyperfine Rydberg EIT ladder simulator (all frequencies in linear MHz)"};
    app.require_subcommand(1);

    Options opts;
    bool list = false;
    bool inject_fault = false;

    auto* transitions = app.add_subcommand("transitions", "Count dipole couplings per field");
    add_common(*transitions, opts);
    transitions->add_flag("--list", list, "Also list every coupling");

    auto* dress = app.add_subcommand("dress", "Diagonalize the RF-dressed Rydberg Hamiltonian");
    add_common(*dress, opts);

    auto* spectrum = app.add_subcommand("spectrum", "Probe transmission versus coupling detuning");
    add_common(*spectrum, opts);

    auto* diagram = app.add_subcommand("diagram", "Export the transition diagram as JSON");
    add_common(*diagram, opts);

    auto* validate = app.add_subcommand("validate", "Run the oracle self-checks");
    add_common(*validate, opts);
    validate->add_flag("--inject-fault", inject_fault, "Flip one RF matrix element sign (self-test of the checks)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : rydberg::cli::kConfigError;
    }

    rydberg::cli::Context ctx{std::cout, std::cerr, opts.jobs};
    rydberg::RunConfig config;
    if (const int rc = rydberg::cli::guarded(ctx, [&] { config = resolve(opts); return 0; }); rc != 0) return rc;

    if (transitions->parsed()) return rydberg::cli::cmd_transitions(config, list, ctx);
    if (dress->parsed()) return rydberg::cli::cmd_dress(config, ctx);
    if (spectrum->parsed()) return rydberg::cli::cmd_spectrum(config, ctx);
    if (diagram->parsed()) return rydberg::cli::cmd_diagram(config, ctx);
    return rydberg::cli::cmd_validate(config, {inject_fault}, ctx);
}
