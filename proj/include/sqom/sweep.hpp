#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqom/gaussian.hpp"
#include "sqom/model.hpp"
#include "sqom/pipeline.hpp"

namespace sqom {

struct MeasureSet {
    bool entanglement = false;  // E_N per bipartition and I_j
    bool steering = false;
    bool contangle = false;
    bool enhancement = false;   // Pi_j
    bool noise = false;         // N_s, M_s
    bool cm = false;

    static MeasureSet all() { return {true, true, true, true, true, true}; }
    bool needs_state() const { return entanglement || steering || contangle || cm; }
    bool needs_measures() const { return entanglement || steering || contangle; }
};

enum class DirectionSet { cw, ccw, both };

std::string_view to_string(DirectionSet d);
std::vector<Direction> expand(DirectionSet d);

struct SweepAxis {
    std::string name;
    std::vector<double> values;

    static SweepAxis linspace(std::string name, double lo, double hi, int points);
    static SweepAxis list(std::string name, std::vector<double> values);
};

// Names accepted as sweep axes. Frequencies are in units of omega_m1.
const std::vector<std::string_view>& axis_names();
// Sets the named parameter on p; throws InvalidParameter for unknown names.
// "temperature_mk" converts to nbar per mode using omega_m1_mhz.
void apply_axis(ModelParams& p, std::string_view name, double value, double omega_m1_mhz = 16.0);

struct SweepSpec {
    std::string name;
    ModelParams base;
    std::vector<SweepAxis> axes;
    DirectionSet directions = DirectionSet::both;
    MeasureSet measures = MeasureSet::all();
    Tolerances tol;
    double omega_m1_mhz = 16.0;  // only used by temperature axes
};

void validate_spec(const SweepSpec& spec);
std::size_t grid_size(const SweepSpec& spec);

struct SweepRow {
    std::vector<double> axis_values;
    Direction direction = Direction::ccw;
    PointStatus status = PointStatus::ok;
    std::string message;
    bool stable = false;
    std::optional<double> spectral_abscissa;
    std::optional<DerivedQuantities> derived;
    std::optional<MeasureReport> measures;
    std::optional<CovarianceMatrix> cm;
    // From E_N^{a|q_j} at the same grid point; absent unless both directions ran.
    std::array<std::optional<double>, 2> asymmetry{};
};

// Rows in axis-major order (first axis outermost), directions innermost in
// the order of expand(spec.directions). Output is independent of workers.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int workers = 1);

// (e_ccw - e_cw) / e_ccw; absent when e_ccw is not positive.
std::optional<double> asymmetry_ratio(double e_ccw, double e_cw);

const std::vector<std::string_view>& preset_names();
std::string_view preset_description(std::string_view name);
SweepSpec figure_preset(std::string_view name);

struct TransitionReport {
    std::vector<Regime> sequence;     // consecutive duplicates collapsed
    std::vector<double> thresholds;   // midpoints where the regime changes
};

TransitionReport classify_transition(const std::vector<double>& r_values,
                                     const std::vector<Regime>& regimes);

// Strongest regime reached at each value of `axis` for one direction and
// bipartition, taken over all other axes. Returned ascending in the axis.
struct AxisRegimes {
    std::vector<double> values;
    std::vector<Regime> regimes;
};
AxisRegimes regimes_along_axis(const SweepSpec& spec, const std::vector<SweepRow>& rows,
                               std::string_view axis, int bipartition, Direction d,
                               double zero_threshold = 1e-10);

inline constexpr std::string_view kCsvSchema = "sqom-sweep-csv v1";

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows,
               bool timestamp = true);
// Shortest round-trip decimal representation.
std::string format_double(double v);

} // namespace sqom
