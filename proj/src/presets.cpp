#include <cmath>

#include "sqom/errors.hpp"
#include "sqom/sweep.hpp"
#include "sqom/units.hpp"

namespace sqom {

namespace {

constexpr double kOmegaM = 16.0;  // omega_m / 2pi in MHz, the unit of every preset
constexpr double kPi = units::pi;

double mhz(double f) { return f / kOmegaM; }

// kappa/2pi = 4.9 MHz, Q_m = 1e5, G/2pi = 0.16, 0.21 MHz, lambda/2pi = 0.32 MHz, nbar = 100.
ModelParams weak_coupling_set() {
    ModelParams p;
    p.kappa = mhz(4.9);
    p.omega_m = {1.0, 1.0};
    p.gamma_m = {1e-5, 1e-5};
    p.nbar_m = {100.0, 100.0};
    p.lambda_hop = mhz(0.32);
    p.delta_c = 1.0;
    p.r_d = 0.1;
    p.theta_d = kPi;
    p.mismatch(Direction::ccw) = {0.0, kPi};
    p.mismatch(Direction::cw) = {0.4, kPi};
    p.drive = EffectiveDrive{{cd{mhz(0.16), 0.0}, cd{mhz(0.21), 0.0}}, 0.0};
    p.direction = Direction::ccw;
    return p;
}

// kappa/2pi = 14.4 MHz, Q_m = 10, G/2pi = 1.6, 2.1 MHz, lambda/2pi = 4.8 MHz, nbar = 0.9.
ModelParams strong_coupling_set() {
    ModelParams p = weak_coupling_set();
    p.kappa = mhz(14.4);
    p.gamma_m = {0.1, 0.1};
    p.nbar_m = {0.9, 0.9};
    p.lambda_hop = mhz(4.8);
    p.r_d = 0.2;
    p.drive = EffectiveDrive{{cd{mhz(1.6), 0.0}, cd{mhz(2.1), 0.0}}, 0.0};
    return p;
}

MeasureSet quantum_measures() {
    MeasureSet m;
    m.entanglement = m.steering = m.contangle = true;
    return m;
}

SweepAxis detuning_axis() { return SweepAxis::linspace("delta_c", 0.5, 1.5, 401); }
SweepAxis squeezing_axis() { return SweepAxis::list("r_d", {0.05, 0.1, 0.2, 0.3}); }

struct PresetInfo {
    std::string_view name;
    std::string_view description;
};

constexpr std::array<PresetInfo, 8> kPresets{{
    {"fig1b", "enhancement factor Pi over (r_d, theta_d)"},
    {"fig1c", "N_s and M_s of the cw mode versus delta_theta for several delta_r"},
    {"fig1d", "steady-state CM for both directions, without (drive_scale 0) and with drive"},
    {"fig2", "E_N versus delta_c for both directions, r_d = 0.1"},
    {"fig2-density", "asymmetry ratio I_j over (delta_r_cw, delta_theta_cw) at delta_c = 1"},
    {"fig2-temperature", "E_N versus bath temperature at delta_c = 1"},
    {"fig3", "optomechanical steering versus delta_c for r_d in {0.05, 0.1, 0.2, 0.3}"},
    {"fig4", "mechanical E_N, residual contangle and steering, strong-coupling set"},
}};

} // namespace

const std::vector<std::string_view>& preset_names() {
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> v;
        for (const auto& p : kPresets) v.push_back(p.name);
        return v;
    }();
    return names;
}

std::string_view preset_description(std::string_view name) {
    for (const auto& p : kPresets)
        if (p.name == name) return p.description;
    throw UnknownPreset(std::string(name));
}

SweepSpec figure_preset(std::string_view name) {
    SweepSpec s;
    s.name = std::string(name);
    s.omega_m1_mhz = kOmegaM;
    if (name == "fig1b") {
        s.base = weak_coupling_set();
        s.axes = {SweepAxis::linspace("r_d", 0.0, 1.5, 61),
                  SweepAxis::linspace("theta_d", 0.0, 2.0 * kPi, 61)};
        s.directions = DirectionSet::ccw;
        s.measures = MeasureSet{};
        s.measures.enhancement = true;
    } else if (name == "fig1c") {
        s.base = weak_coupling_set();
        s.axes = {SweepAxis::list("delta_r_cw", {0.0, 0.2, 0.4, 0.6}),
                  SweepAxis::linspace("delta_theta_cw", 0.0, 2.0 * kPi, 181)};
        s.directions = DirectionSet::cw;
        s.measures = MeasureSet{};
        s.measures.noise = true;
    } else if (name == "fig1d") {
        s.base = weak_coupling_set();
        s.axes = {SweepAxis::list("drive_scale", {0.0, 1.0})};
        s.directions = DirectionSet::both;
        s.measures = MeasureSet::all();
    } else if (name == "fig2") {
        s.base = weak_coupling_set();
        s.axes = {detuning_axis()};
        s.measures = quantum_measures();
    } else if (name == "fig2-density") {
        s.base = weak_coupling_set();
        s.axes = {SweepAxis::linspace("delta_r_cw", 0.0, 0.5, 101),
                  SweepAxis::linspace("delta_theta_cw", 0.0, 2.0 * kPi, 101)};
        s.measures = MeasureSet{};
        s.measures.entanglement = true;
    } else if (name == "fig2-temperature") {
        s.base = weak_coupling_set();
        s.axes = {SweepAxis::linspace("temperature_mk", 10.0, 150.0, 71)};
        s.measures = quantum_measures();
    } else if (name == "fig3") {
        s.base = weak_coupling_set();
        s.axes = {squeezing_axis(), detuning_axis()};
        s.measures = quantum_measures();
    } else if (name == "fig4") {
        s.base = strong_coupling_set();
        s.axes = {squeezing_axis(), detuning_axis()};
        s.measures = quantum_measures();
    } else {
        throw UnknownPreset(std::string(name));
    }
    return s;
}

} // namespace sqom
