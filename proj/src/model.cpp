#include "sqom/model.hpp"

#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

std::string_view to_string(Direction d) { return d == Direction::cw ? "cw" : "ccw"; }

std::optional<Direction> parse_direction(std::string_view s) {
    if (s == "cw") return Direction::cw;
    if (s == "ccw") return Direction::ccw;
    return std::nullopt;
}

bool ModelParams::is_degenerate() const {
    return omega_m[0] == omega_m[1] && gamma_m[0] == gamma_m[1] && nbar_m[0] == nbar_m[1];
}

double pump_from_squeezing(double delta_c, double r_d) { return 0.5 * delta_c * std::tanh(2.0 * r_d); }

double squeezing_from_pump(double delta_c, double xi_d) {
    return 0.25 * std::log((delta_c + 2.0 * xi_d) / (delta_c - 2.0 * xi_d));
}

double effective_frequency(double delta_c, double r_d) { return delta_c / std::cosh(2.0 * r_d); }

double effective_frequency_from_pump(double delta_c, double xi_d, double r_d) {
    return (delta_c - 2.0 * xi_d) * std::exp(2.0 * r_d);
}

ComStrengths com_strengths(double g, double r_d) {
    const double s = std::sinh(r_d);
    return {g * std::cosh(2.0 * r_d), g * std::sinh(2.0 * r_d), g * s * s};
}

ReservoirNoise reservoir_noise(double r_d, double theta_d, double r_e, double theta_e) {
    const double dth = theta_e - theta_d;
    const double chd = std::cosh(r_d), shd = std::sinh(r_d);
    const double che = std::cosh(r_e), she = std::sinh(r_e);
    ReservoirNoise out;
    out.n_s = shd * shd * che * che + chd * chd * she * she +
              0.5 * std::cos(dth) * std::sinh(2.0 * r_d) * std::sinh(2.0 * r_e);
    const cd ph = std::polar(1.0, dth);
    out.m_s = std::polar(1.0, theta_d) * (shd * che + ph * chd * she) *
              (chd * che + std::conj(ph) * shd * she);
    return out;
}

Coupling effective_coupling(cd g_eff, double r_d, double theta_d) {
    Coupling c;
    c.lambda_eff = g_eff * std::cosh(2.0 * r_d) -
                   std::conj(g_eff) * std::sinh(2.0 * r_d) * std::polar(1.0, -theta_d);
    if (g_eff != cd{0.0, 0.0}) c.pi_factor = std::abs(c.lambda_eff / g_eff);
    return c;
}

void check_invariants(const ModelParams& p) {
    auto fail = [](const std::string& what) { throw InvalidParameter(what); };
    if (!(p.kappa > 0.0)) fail("kappa must be > 0");
    for (int j = 0; j < 2; ++j) {
        const std::string idx = std::to_string(j + 1);
        if (!(p.omega_m[j] > 0.0)) fail("omega_m" + idx + " must be > 0");
        if (!(p.gamma_m[j] > 0.0)) fail("gamma_m" + idx + " must be > 0");
        if (!(p.nbar_m[j] >= 0.0)) fail("nbar_m" + idx + " must be >= 0");
    }
    if (!(p.r_d >= 0.0)) fail("r_d must be >= 0");
    for (Direction d : {Direction::cw, Direction::ccw}) {
        if (!(p.r_e(d) >= 0.0))
            fail("reservoir r_e for " + std::string(to_string(d)) + " must be >= 0");
    }
    if (!std::isfinite(p.delta_c) || !std::isfinite(p.lambda_hop) || !std::isfinite(p.theta_d))
        fail("non-finite parameter");
    if (p.r_d > 0.0 && !(2.0 * std::abs(pump_from_squeezing(p.delta_c, p.r_d)) < p.delta_c))
        fail("squeezing requires |2 xi_d| < delta_c (delta_c must be > 0)");
}

std::vector<std::string> validity_warnings(const ModelParams& p) {
    std::vector<std::string> out;
    if (!p.is_degenerate())
        out.emplace_back("non-degenerate mechanical modes: the phonon-hopping model assumes "
                         "equal frequencies, damping and occupancy");
    return out;
}

void apply_coupling(DerivedQuantities& dq, const std::array<cd, 2>& g_eff, double r_d,
                    double theta_d) {
    for (int j = 0; j < 2; ++j) {
        const Coupling c = effective_coupling(g_eff[j], r_d, theta_d);
        dq.lambda_eff[j] = c.lambda_eff;
        dq.pi_factor[j] = c.pi_factor;
    }
}

DerivedQuantities derive(const ModelParams& p, Direction d) {
    DerivedQuantities dq;
    dq.xi_d = pump_from_squeezing(p.delta_c, p.r_d);
    dq.omega_s = effective_frequency(p.delta_c, p.r_d);
    const ReservoirNoise rn = reservoir_noise(p.r_d, p.theta_d, p.r_e(d), p.theta_e(d));
    dq.n_s = rn.n_s;
    dq.m_s = rn.m_s;
    dq.delta_r = p.mismatch(d).delta_r;
    dq.delta_theta = p.mismatch(d).delta_theta;
    if (const auto* eff = std::get_if<EffectiveDrive>(&p.drive)) {
        apply_coupling(dq, eff->g_eff, p.r_d, p.theta_d);
    } else {
        const auto& phys = std::get<PhysicalDrive>(p.drive);
        for (int j = 0; j < 2; ++j) {
            const ComStrengths cs = com_strengths(phys.g_bare[j], p.r_d);
            dq.zeta_s[j] = cs.zeta_s;
            dq.zeta_p[j] = cs.zeta_p;
            dq.f_drive[j] = cs.f_drive;
        }
    }
    return dq;
}

} // namespace sqom
