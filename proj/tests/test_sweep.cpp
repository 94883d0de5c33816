#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "sqom/errors.hpp"
#include "sqom/sweep.hpp"

using namespace sqom;

namespace {

SweepSpec small_spec() {
    SweepSpec s = figure_preset("fig2");
    s.axes = {SweepAxis::list("r_d", {0.05, 0.2}), SweepAxis::linspace("delta_c", 0.8, 1.2, 3)};
    return s;
}

std::string csv_of(const SweepSpec& s, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    write_csv(os, s, rows, false);
    return os.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(SweepAxis, Linspace) {
    const SweepAxis a = SweepAxis::linspace("delta_c", 0.5, 1.5, 401);
    ASSERT_EQ(a.values.size(), 401u);
    EXPECT_EQ(a.values.front(), 0.5);
    EXPECT_EQ(a.values.back(), 1.5);
    EXPECT_NEAR(a.values[200], 1.0, 1e-15);
    for (std::size_t k = 1; k < a.values.size(); ++k) EXPECT_GT(a.values[k], a.values[k - 1]);
}

TEST(SweepSpec, Validation) {
    SweepSpec s = small_spec();
    EXPECT_NO_THROW(validate_spec(s));
    EXPECT_EQ(grid_size(s), 6u);
    s.axes.push_back(SweepAxis::list("kappa", {0.3}));
    EXPECT_THROW(validate_spec(s), InvalidParameter);
    s = small_spec();
    s.axes[0].name = "colour";
    EXPECT_THROW(validate_spec(s), InvalidParameter);
    s = small_spec();
    s.axes[1].name = "r_d";
    EXPECT_THROW(validate_spec(s), InvalidParameter);
    s = small_spec();
    s.axes[0].values = {0.1, NAN};
    EXPECT_THROW(validate_spec(s), InvalidParameter);
    ModelParams p;
    EXPECT_THROW(apply_axis(p, "colour", 1.0), InvalidParameter);
}

TEST(ApplyAxis, SetsParameters) {
    ModelParams p = figure_preset("fig2").base;
    apply_axis(p, "delta_c", 1.1);
    EXPECT_EQ(p.delta_c, 1.1);
    apply_axis(p, "delta_r_cw", 0.3);
    EXPECT_EQ(p.mismatch(Direction::cw).delta_r, 0.3);
    EXPECT_EQ(p.mismatch(Direction::ccw).delta_r, 0.0);
    EXPECT_THROW(apply_axis(p, "temperature_mk", 0.0), InvalidParameter);
    apply_axis(p, "temperature_mk", 100.0);
    EXPECT_NEAR(p.nbar_m[0], 129.76, 0.05);
    EXPECT_EQ(p.nbar_m[0], p.nbar_m[1]);
}

TEST(RunSweep, AxisMajorOrderDirectionsInnermost) {
    const SweepSpec s = small_spec();
    const auto rows = run_sweep(s);
    ASSERT_EQ(rows.size(), 12u);
    std::size_t k = 0;
    for (double r : s.axes[0].values)
        for (double dc : s.axes[1].values)
            for (Direction d : {Direction::ccw, Direction::cw}) {
                EXPECT_EQ(rows[k].axis_values, (std::vector<double>{r, dc}));
                EXPECT_EQ(rows[k].direction, d);
                ++k;
            }
}

TEST(RunSweep, DeterministicAcrossWorkers) {
    const SweepSpec s = small_spec();
    const std::string ref = csv_of(s, run_sweep(s, 1));
    for (int w : {2, 3, 8, 64}) EXPECT_EQ(csv_of(s, run_sweep(s, w)), ref) << w << " workers";
    EXPECT_EQ(csv_of(s, run_sweep(s, 1)), ref);
}

TEST(RunSweep, EmptyMeasureSetKeepsOnlyFlags) {
    SweepSpec s = small_spec();
    s.measures = MeasureSet{};
    for (const SweepRow& row : run_sweep(s)) {
        EXPECT_FALSE(row.measures);
        EXPECT_FALSE(row.cm);
        EXPECT_TRUE(row.spectral_abscissa.has_value());
    }
    const auto lines = lines_of(csv_of(s, run_sweep(s)));
    EXPECT_EQ(lines[2], "r_d,delta_c,direction,status,stable,spectral_abscissa,message");
}

TEST(RunSweep, SinglePointFig2) {
    SweepSpec s = figure_preset("fig2");
    s.axes = {SweepAxis::list("delta_c", {1.0})};
    const auto rows = run_sweep(s);
    ASSERT_EQ(rows.size(), 2u);
    ASSERT_TRUE(rows[0].measures && rows[1].measures);
    EXPECT_EQ(rows[0].direction, Direction::ccw);
    EXPECT_GE(rows[0].measures->e_n[0], rows[1].measures->e_n[0]);
}

TEST(RunSweep, DirectionsFactorThroughReservoir) {
    SweepSpec s = small_spec();
    s.base.mismatch(Direction::cw) = s.base.mismatch(Direction::ccw);
    s.measures.cm = true;
    const auto rows = run_sweep(s);
    for (std::size_t k = 0; k < rows.size(); k += 2) {
        ASSERT_TRUE(rows[k].cm && rows[k + 1].cm);
        EXPECT_LT((rows[k].cm->v - rows[k + 1].cm->v).cwiseAbs().maxCoeff(), 1e-10);
        for (int b = 0; b < 3; ++b) {
            EXPECT_NEAR(rows[k].measures->e_n[b], rows[k + 1].measures->e_n[b], 1e-10);
            EXPECT_NEAR(rows[k].measures->steering[b].forward,
                        rows[k + 1].measures->steering[b].forward, 1e-10);
        }
    }
}

TEST(RunSweep, UnstableRowsCarryNoMeasures) {
    SweepSpec s = figure_preset("fig4");
    s.axes = {SweepAxis::list("g1", {0.1, 5.0})};
    const auto rows = run_sweep(s);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_TRUE(rows[0].stable);
    for (std::size_t k = 2; k < 4; ++k) {
        EXPECT_FALSE(rows[k].stable);
        EXPECT_EQ(rows[k].status, PointStatus::unstable);
        EXPECT_FALSE(rows[k].measures);
        EXPECT_FALSE(rows[k].cm);
        EXPECT_GT(*rows[k].spectral_abscissa, 0.0);
    }
    const auto lines = lines_of(csv_of(s, rows));
    EXPECT_NE(lines.back().find(",unstable,0,"), std::string::npos);
    EXPECT_NE(lines.back().find(",NA,"), std::string::npos);
}

TEST(RunSweep, InvalidPointsAreRecorded) {
    SweepSpec s = small_spec();
    s.axes = {SweepAxis::list("kappa", {0.3, -1.0})};
    const auto rows = run_sweep(s);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[2].status, PointStatus::invalid);
    EXPECT_FALSE(rows[2].message.empty());
    EXPECT_EQ(rows[0].status, PointStatus::ok);
}

TEST(AsymmetryRatio, Cases) {
    EXPECT_EQ(asymmetry_ratio(0.3, 0.3), 0.0);
    EXPECT_EQ(asymmetry_ratio(0.3, 0.0), 1.0);
    EXPECT_NEAR(*asymmetry_ratio(0.4, 0.1), 0.75, 1e-15);
    EXPECT_FALSE(asymmetry_ratio(0.0, 0.0));
    EXPECT_FALSE(asymmetry_ratio(0.0, 0.2));
}

TEST(AsymmetryRatio, OnlyWithBothDirections) {
    SweepSpec s = small_spec();
    s.directions = DirectionSet::ccw;
    for (const SweepRow& row : run_sweep(s)) EXPECT_FALSE(row.asymmetry[0]);
    s.directions = DirectionSet::both;
    for (const SweepRow& row : run_sweep(s)) {
        const bool positive = row.direction == Direction::ccw
                                  ? row.measures->e_n[0] > 0.0
                                  : true;
        if (!positive) EXPECT_FALSE(row.asymmetry[0]);
    }
}

TEST(Presets, AllConstruct) {
    for (auto name : preset_names()) {
        const SweepSpec s = figure_preset(name);
        EXPECT_NO_THROW(validate_spec(s)) << name;
        EXPECT_FALSE(preset_description(name).empty());
        EXPECT_EQ(s.name, name);
    }
    EXPECT_THROW(figure_preset("fig5"), UnknownPreset);
    EXPECT_THROW(preset_description("fig5"), UnknownPreset);
}

TEST(Presets, Fig2) {
    const SweepSpec s = figure_preset("fig2");
    ASSERT_EQ(s.axes.size(), 1u);
    EXPECT_EQ(s.axes[0].name, "delta_c");
    EXPECT_EQ(s.axes[0].values.size(), 401u);
    EXPECT_EQ(s.axes[0].values.front(), 0.5);
    EXPECT_EQ(s.axes[0].values.back(), 1.5);
    EXPECT_EQ(s.directions, DirectionSet::both);
    EXPECT_EQ(s.base.r_d, 0.1);
    EXPECT_NEAR(s.base.theta_d, M_PI, 1e-15);
    EXPECT_EQ(s.base.mismatch(Direction::ccw).delta_r, 0.0);
    EXPECT_NEAR(s.base.mismatch(Direction::ccw).delta_theta, M_PI, 1e-15);
    EXPECT_EQ(s.base.mismatch(Direction::cw).delta_r, 0.4);
    EXPECT_NEAR(s.base.kappa, 4.9 / 16.0, 1e-15);
    EXPECT_EQ(s.base.nbar_m[0], 100.0);
    EXPECT_EQ(s.base.gamma_m[0], 1e-5);
}

TEST(Presets, Fig4AndFig1d) {
    const SweepSpec s = figure_preset("fig4");
    EXPECT_EQ(s.base.r_d, 0.2);
    EXPECT_NEAR(s.base.kappa, 14.4 / 16.0, 1e-15);
    EXPECT_EQ(s.base.gamma_m[0], 0.1);
    EXPECT_EQ(s.base.nbar_m[0], 0.9);
    EXPECT_NEAR(s.base.lambda_hop, 0.3, 1e-15);
    EXPECT_EQ(s.axes[0].name, "r_d");
    EXPECT_EQ(s.axes[1].values.size(), 401u);

    const SweepSpec d = figure_preset("fig1d");
    EXPECT_EQ(d.directions, DirectionSet::both);
    EXPECT_TRUE(d.measures.cm);
    const auto rows = run_sweep(d);
    ASSERT_EQ(rows.size(), 4u);
    // without drive the optics decouple from the mechanics
    for (int k : {0, 1}) {
        ASSERT_TRUE(rows[k].cm);
        EXPECT_LT((rows[k].cm->v.topRightCorner<2, 4>().cwiseAbs().maxCoeff()), 1e-12);
    }
    EXPECT_GT((rows[2].cm->v.topRightCorner<2, 4>().cwiseAbs().maxCoeff()), 1e-6);
}

TEST(Transition, Sequence) {
    const auto empty = classify_transition({0.1, 0.2}, {Regime::no_way, Regime::no_way});
    EXPECT_EQ(empty.sequence, std::vector<Regime>{Regime::no_way});
    EXPECT_TRUE(empty.thresholds.empty());

    const auto rep = classify_transition(
        {0.05, 0.1, 0.2, 0.3},
        {Regime::no_way, Regime::one_way, Regime::one_way, Regime::two_way});
    EXPECT_EQ(rep.sequence, (std::vector<Regime>{Regime::no_way, Regime::one_way, Regime::two_way}));
    ASSERT_EQ(rep.thresholds.size(), 2u);
    EXPECT_NEAR(rep.thresholds[0], 0.075, 1e-15);
    EXPECT_NEAR(rep.thresholds[1], 0.25, 1e-15);
    EXPECT_THROW(classify_transition({0.1}, {}), InvalidParameter);
}

TEST(Csv, HeaderAndRows) {
    SweepSpec s = small_spec();
    s.measures = MeasureSet::all();
    const auto rows = run_sweep(s);
    std::ostringstream os;
    write_csv(os, s, rows, true);
    const auto lines = lines_of(os.str());
    EXPECT_EQ(lines[0], "# " + std::string(kCsvSchema));
    EXPECT_EQ(lines[1], "# sweep: fig2");
    EXPECT_EQ(lines[2].rfind("# generated: ", 0), 0u);
    const std::string& header = lines[3];
    for (auto col : {"r_d", "delta_c", "direction", "stable", "EN_a_q1", "EN_q1_q2", "I_1", "I_2",
                     "R_tau_min", "S_a_to_q1", "S_q1_to_a", "regime_a_q1", "n_s", "pi_1", "V11",
                     "V66", "message"})
        EXPECT_NE(header.find(col), std::string::npos) << col;
    const auto ncol = std::count(header.begin(), header.end(), ',');
    ASSERT_EQ(lines.size(), 4 + rows.size());
    for (std::size_t k = 4; k < lines.size(); ++k)
        EXPECT_EQ(std::count(lines[k].begin(), lines[k].end(), ','), ncol);
    EXPECT_NE(lines[4].find(",ccw,ok,1,"), std::string::npos);
}

TEST(Csv, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) EXPECT_EQ(std::stod(format_double(v)), v);
    EXPECT_EQ(format_double(0.5), "0.5");
}
