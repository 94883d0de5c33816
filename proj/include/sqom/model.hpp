#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sqom {

using cd = std::complex<double>;

enum class Direction { cw, ccw };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

// Reservoir squeezing stored relative to the intracavity squeezing:
// r_e = r_d + delta_r, theta_e = theta_d + delta_theta.
struct ReservoirMismatch {
    double delta_r = 0.0;
    double delta_theta = 3.14159265358979323846;
};

// G_j supplied directly. The linear drift then uses Delta_s = omega_s - beta_s.
struct EffectiveDrive {
    std::array<cd, 2> g_eff{};
    double beta_s = 0.0;
};

// Bare couplings g_j and coherent amplitude; mean fields solved self-consistently.
struct PhysicalDrive {
    std::array<double, 2> g_bare{};
    cd epsilon_d{0.0, 0.0};
};

using Drive = std::variant<EffectiveDrive, PhysicalDrive>;

// All rates and frequencies in units of omega_m1.
struct ModelParams {
    double kappa = 1.0;
    std::array<double, 2> omega_m{1.0, 1.0};
    std::array<double, 2> gamma_m{1e-5, 1e-5};
    std::array<double, 2> nbar_m{0.0, 0.0};
    double lambda_hop = 0.0;
    double delta_c = 1.0;
    double r_d = 0.0;
    double theta_d = 3.14159265358979323846;
    // Indexed by static_cast<int>(Direction).
    std::array<ReservoirMismatch, 2> reservoir{};
    Drive drive = EffectiveDrive{};
    Direction direction = Direction::ccw;

    const ReservoirMismatch& mismatch(Direction d) const {
        return reservoir[static_cast<int>(d)];
    }
    ReservoirMismatch& mismatch(Direction d) { return reservoir[static_cast<int>(d)]; }
    double r_e(Direction d) const { return r_d + mismatch(d).delta_r; }
    double theta_e(Direction d) const { return theta_d + mismatch(d).delta_theta; }
    bool is_degenerate() const;
};

// Numerical knobs shared by the pipeline.
struct Tolerances {
    double solver_tol = 1e-12;
    int max_iter = 10000;
    double mixing = 0.5;
    double pole_guard = 0.1;
    double stability = -1e-12;   // stable iff spectral abscissa < stability
    double zero = 1e-10;         // "> 0" threshold for regimes
    double monogamy = 1e-9;
    double hermiticity = 1e-9;
    double bona_fide = 1e-8;
    double residual = 1e-10;     // relative steady-state residual
    double rcond = 1e-13;        // below this the reduced system is singular
};

struct ComStrengths {
    double zeta_s = 0.0;
    double zeta_p = 0.0;
    double f_drive = 0.0;
};

struct ReservoirNoise {
    double n_s = 0.0;
    cd m_s{0.0, 0.0};
};

struct Coupling {
    cd lambda_eff{0.0, 0.0};
    std::optional<double> pi_factor;
};

struct DerivedQuantities {
    double xi_d = 0.0;
    double omega_s = 0.0;
    // Zero in effective drive mode, where bare couplings are not given.
    std::array<double, 2> zeta_s{};
    std::array<double, 2> zeta_p{};
    std::array<double, 2> f_drive{};
    double n_s = 0.0;
    cd m_s{0.0, 0.0};
    std::array<cd, 2> lambda_eff{};
    std::array<std::optional<double>, 2> pi_factor{};
    double delta_r = 0.0;
    double delta_theta = 0.0;
};

double pump_from_squeezing(double delta_c, double r_d);
// r_d = (1/4) ln[(delta_c + 2 xi_d)/(delta_c - 2 xi_d)]
double squeezing_from_pump(double delta_c, double xi_d);
double effective_frequency(double delta_c, double r_d);
// (delta_c - 2 xi_d) e^{2 r_d}, the unsimplified form.
double effective_frequency_from_pump(double delta_c, double xi_d, double r_d);

ComStrengths com_strengths(double g, double r_d);
ReservoirNoise reservoir_noise(double r_d, double theta_d, double r_e, double theta_e);
Coupling effective_coupling(cd g_eff, double r_d, double theta_d);

// Throws InvalidParameter when a ModelParams invariant is violated.
void check_invariants(const ModelParams& p);
// Non-fatal validity notes (e.g. non-degenerate mechanics).
std::vector<std::string> validity_warnings(const ModelParams& p);

// Closed-form quantities for one drive direction. In physical drive mode
// lambda_eff and pi_factor are left empty until the mean field is known.
DerivedQuantities derive(const ModelParams& p, Direction d);
void apply_coupling(DerivedQuantities& dq, const std::array<cd, 2>& g_eff, double r_d,
                    double theta_d);

} // namespace sqom
