#include "rydberg_eit/config.hpp"
#include "rydberg_eit/errors.hpp"

#include <doctest.h>

using namespace rydberg;

TEST_CASE("defaults")
{
    const RunConfig c = parse_config("");
    CHECK(c.scenario == scenario_full());
    CHECK(c.drive.probe.rabi_mhz == 0.5);
    CHECK(c.drive.coupling.rabi_mhz == 20.0);
    CHECK(c.drive.rf.rabi_mhz == 200.0);
    CHECK(c.scan.points == 601);
    CHECK(c.decay.intermediate_mhz == 5.2);
    CHECK(c.cluster_tolerance_mhz() == doctest::Approx(2e-4));
}

TEST_CASE("sections, comments and values")
{
    const RunConfig c = parse_config(R"(
# co-polarized truncated run
scenario = truncated
[rf]
rabi_mhz = 150
polarization = 1, 0, 0
; a comment
[scan]
start_mhz = -50
stop_mhz = 50
points = 11
[drive]
coupling_detuning_mhz = 2.5
[optical]
reachability = amplitude
[diagram]
fields = rf
)");
    CHECK(c.scenario == scenario_truncated());
    CHECK(c.drive.rf.rabi_mhz == 150.0);
    CHECK(c.drive.rf.polarization == Vec3::unit_x());
    CHECK(c.scan.grid().size() == 11);
    CHECK(c.drive.coupling_detuning_mhz == 2.5);
    CHECK(c.reachability == ReachabilityRule::amplitude);
    CHECK(c.diagram_fields == std::vector<FieldKind>{FieldKind::rf});
}

TEST_CASE("scenario key is applied before level keys")
{
    const RunConfig c = parse_config("level.rydberg_lower.f = 4, 5\nscenario = truncated\n");
    CHECK(c.scenario.name == "custom");
    CHECK(c.scenario.f_values(Role::rydberg_lower).size() == 2);
    CHECK(c.scenario.f_values(Role::rydberg_upper).size() == 3);
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(parse_config("rf.rabbi_mhz = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("rf.rabi_mhz = fast"), ConfigError);
    CHECK_THROWS_AS(parse_config("rf.rabi_mhz = 1\nrf.rabi_mhz = 2"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario = partial"), ConfigError);
    CHECK_THROWS_AS(parse_config("just words"), ConfigError);
    CHECK_THROWS_AS(parse_config("scan.points = 0").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("dressing.cluster_tolerance_rel = 0").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("rf.polarization = 0, 0, 0"), ConfigError);
    CHECK_THROWS_AS(parse_config("level.rydberg_lower.f = 9").validate(), ConfigError);
    CHECK_THROWS_AS(parse_config("optical.reachability = loose"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/run.conf"), ConfigError);
}

TEST_CASE("written configs reparse identically")
{
    RunConfig c = parse_config("scenario = truncated\n");
    c.drive.rf = FieldSpec::rf(123.456, Vec3::in_xz_plane(30.0));
    c.drive.coupling = FieldSpec::coupling(17.0, Vec3{1.0, 2.0, 3.0});
    c.drive.ground_populations = {0.1, 0.1, 0.1, 0.1, 0.2, 0.1, 0.1, 0.1, 0.1};
    c.decay.dephasing_mhz = 0.3;
    c.scan = {-12.5, 40.0, 77};
    c.peak_prominence = 0.05;
    c.diagram_fields = {FieldKind::probe, FieldKind::rf};
    c.output_path = "out.csv";
    c.output_format = "csv";
    c.reachability = ReachabilityRule::amplitude;
    CHECK(parse_config(write_config(c)) == c);

    RunConfig custom = parse_config("level.rydberg_upper.f = 3, 4\nlevel.rydberg_upper.max_abs_m = 2\n"
                                    "level.rydberg_lower.offset_mhz.4 = 1.25\nnuclear_spin = 7/2\n");
    CHECK(parse_config(write_config(custom)) == custom);
    CHECK(parse_config(write_config(RunConfig{})) == RunConfig{});
}
