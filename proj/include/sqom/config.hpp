#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqom/errors.hpp"
#include "sqom/model.hpp"
#include "sqom/sweep.hpp"

namespace sqom {

class ConfigError : public Error {
public:
    ConfigError(std::string source, int line, std::string key, const std::string& what);
    std::string source;
    int line;  // 0 when not tied to a line
    std::string key;
};

// Sectioned key-value configuration:
//
//   [model]        omega_m, omega_m2, kappa, gamma_m, gamma_m2, q_m, q_m2,
//                  nbar_m, nbar_m2, temperature, lambda_hop, delta_c, r_d,
//                  theta_d, direction
//   [drive]        mode (effective|physical), g1, g2, g1_phase, g2_phase,
//                  beta_s, bare_g1, bare_g2, epsilon_d, epsilon_phase
//   [reservoir.cw] / [reservoir.ccw]   delta_r, delta_theta (or r_e, theta_e)
//   [tolerances]   solver_tol, max_iter, mixing, pole_guard, stability, zero,
//                  monogamy, hermiticity, bona_fide, residual, rcond
//   [sweep]        directions, measures, axis1, axis2
//   [output]       path, workers, timestamp
//
// Frequencies need a unit: MHz, kHz or Hz (values of f/2pi) or wm (ratio to
// omega_m). Angles take rad, deg or pi. Temperatures take K, mK or uK.
struct RunConfig {
    ModelParams params;
    Tolerances tol;
    double omega_m1_mhz = 16.0;
    std::optional<SweepSpec> sweep;
    std::optional<std::string> out;
    std::optional<int> workers;
    std::optional<bool> timestamp;
    std::vector<std::string> warnings;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

} // namespace sqom
