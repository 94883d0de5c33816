#include <sstream>

#include <gtest/gtest.h>

#include "sqom/config.hpp"

using namespace sqom;

namespace {

const char* kFig2Point = R"(# weak-coupling point
[model]
omega_m = 16 MHz
kappa = 4.9 MHz
q_m = 1e5
nbar_m = 100
lambda_hop = 0.32 MHz
delta_c = 1 wm
r_d = 0.1
theta_d = 1 pi
direction = ccw

[drive]
mode = effective
g1 = 0.16 MHz
g2 = 210 kHz

[reservoir.cw]
delta_r = 0.4
delta_theta = 180 deg

[reservoir.ccw]
delta_r = 0
delta_theta = pi
)";

RunConfig parse(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is, "test.ini");
}

ConfigError parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e;
    }
    ADD_FAILURE() << "no ConfigError for:\n" << text;
    return ConfigError("", 0, "", "");
}

} // namespace

TEST(Config, ParsesUnitsIntoOmegaMRatios) {
    const RunConfig c = parse(kFig2Point);
    const ModelParams& p = c.params;
    EXPECT_EQ(c.omega_m1_mhz, 16.0);
    EXPECT_NEAR(p.kappa, 4.9 / 16.0, 1e-15);
    EXPECT_EQ(p.omega_m[0], 1.0);
    EXPECT_NEAR(p.gamma_m[0], 1e-5, 1e-20);
    EXPECT_EQ(p.nbar_m[1], 100.0);
    EXPECT_NEAR(p.lambda_hop, 0.02, 1e-15);
    EXPECT_EQ(p.delta_c, 1.0);
    EXPECT_NEAR(p.theta_d, M_PI, 1e-15);
    const auto& e = std::get<EffectiveDrive>(p.drive);
    EXPECT_NEAR(e.g_eff[0].real(), 0.01, 1e-15);
    EXPECT_NEAR(e.g_eff[1].real(), 0.013125, 1e-15);
    EXPECT_NEAR(p.mismatch(Direction::cw).delta_theta, M_PI, 1e-15);
    EXPECT_EQ(p.mismatch(Direction::cw).delta_r, 0.4);
    EXPECT_FALSE(c.sweep);
}

TEST(Config, MatchesPreset) {
    const ModelParams p = parse(kFig2Point).params;
    const ModelParams q = figure_preset("fig2").base;
    EXPECT_NEAR(p.kappa, q.kappa, 1e-15);
    EXPECT_NEAR(p.lambda_hop, q.lambda_hop, 1e-15);
    EXPECT_NEAR(p.gamma_m[1], q.gamma_m[1], 1e-18);
}

TEST(Config, MissingUnitNamesTheKey) {
    std::string text = kFig2Point;
    text.replace(text.find("4.9 MHz"), 7, "4.9");
    const ConfigError e = parse_error(text);
    EXPECT_EQ(e.key, "kappa");
    EXPECT_EQ(e.line, 4);
    EXPECT_NE(std::string(e.what()).find("kappa"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("test.ini:4"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("unit"), std::string::npos);
}

TEST(Config, AngleUnitRequired) {
    std::string text = kFig2Point;
    text.replace(text.find("180 deg"), 7, "3.14");
    EXPECT_EQ(parse_error(text).key, "delta_theta");
}

TEST(Config, UnknownKeyAndSectionRejected) {
    ConfigError e = parse_error(std::string(kFig2Point) + "[output]\ncolour = red\n");
    EXPECT_EQ(e.key, "colour");
    EXPECT_EQ(e.line, 26);
    e = parse_error(std::string(kFig2Point) + "[plot]\n");
    EXPECT_NE(std::string(e.what()).find("unknown section"), std::string::npos);
    e = parse_error("kappa = 1 wm\n");
    EXPECT_EQ(e.key, "kappa");
}

TEST(Config, DuplicateAndMalformedLines) {
    EXPECT_EQ(parse_error(std::string(kFig2Point) + "[model]\nkappa = 1 MHz\n").key, "kappa");
    EXPECT_EQ(parse_error("[model]\nkappa 1 wm\n").line, 2);
    EXPECT_EQ(parse_error("[model\n").line, 1);
}

TEST(Config, ConflictingAndInvalidValues) {
    EXPECT_EQ(parse_error("[model]\nkappa = 0.3 wm\ngamma_m = 1e-5 wm\nq_m = 10\n").key, "q_m");
    EXPECT_EQ(parse_error("[model]\nkappa = 0.3 wm\ndirection = up\n").key, "direction");
    EXPECT_EQ(parse_error("[model]\nkappa = 0.3 wm\n[drive]\nmode = physical\ng1 = 1 wm\n").key, "g1");
    EXPECT_EQ(parse_error("[model]\nkappa = 0.3 wm\n[output]\nworkers = 0\n").key, "workers");
    EXPECT_EQ(parse_error("[model]\nkappa = 1 MHz\n").key, "kappa");  // no MHz reference
    EXPECT_EQ(parse_error("[model]\ndelta_c = 1 wm\n").key, "kappa");
    // physics invariants surface as config errors
    EXPECT_THROW(parse("[model]\nkappa = -0.3 wm\n"), ConfigError);
}

TEST(Config, TemperatureConvertsToOccupancy) {
    const RunConfig c = parse("[model]\nomega_m = 16 MHz\nkappa = 4.9 MHz\ntemperature = 77.2 mK\n");
    EXPECT_NEAR(c.params.nbar_m[0], 100.0, 0.1);
    EXPECT_EQ(c.params.nbar_m[0], c.params.nbar_m[1]);
}

TEST(Config, SweepSection) {
    const RunConfig c = parse(std::string(kFig2Point) +
                              "[sweep]\ndirections = both\nmeasures = entanglement, steering\n"
                              "axis1 = r_d list 0.1 0.2\naxis2 = delta_c linspace 0.5 1.5 11\n"
                              "[output]\npath = out.csv\nworkers = 4\ntimestamp = no\n");
    ASSERT_TRUE(c.sweep);
    EXPECT_EQ(c.sweep->axes.size(), 2u);
    EXPECT_EQ(c.sweep->axes[1].values.size(), 11u);
    EXPECT_TRUE(c.sweep->measures.entanglement);
    EXPECT_TRUE(c.sweep->measures.steering);
    EXPECT_FALSE(c.sweep->measures.cm);
    EXPECT_EQ(c.sweep->directions, DirectionSet::both);
    EXPECT_EQ(*c.out, "out.csv");
    EXPECT_EQ(*c.workers, 4);
    EXPECT_FALSE(*c.timestamp);

    EXPECT_EQ(parse_error(std::string(kFig2Point) + "[sweep]\naxis1 = colour list 1 2\n").key, "axis1");
    EXPECT_EQ(parse_error(std::string(kFig2Point) + "[sweep]\nmeasures = vibes\n").key, "measures");
    EXPECT_EQ(parse_error(std::string(kFig2Point) + "[sweep]\naxis1 = r_d linspace 0 1 1\n").key,
              "axis1");
}

TEST(Config, PhysicalDrive) {
    const RunConfig c = parse(
        "[model]\nkappa = 0.3 wm\n[drive]\nmode = physical\nbare_g1 = 1e-4 wm\nbare_g2 = 1e-4 wm\n"
        "epsilon_d = 50 wm\nepsilon_phase = 0.5 pi\n");
    const auto& d = std::get<PhysicalDrive>(c.params.drive);
    EXPECT_EQ(d.g_bare[0], 1e-4);
    EXPECT_NEAR(d.epsilon_d.imag(), 50.0, 1e-12);
    EXPECT_NEAR(d.epsilon_d.real(), 0.0, 1e-12);
}

TEST(Config, LoadMissingFile) {
    try {
        load_config("/nonexistent/run.ini");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.source, "/nonexistent/run.ini");
    }
}
