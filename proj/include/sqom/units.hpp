#pragma once

// Conversion layer between laboratory units and the dimensionless
// representation used by the core (frequencies in units of omega_m1).

namespace sqom::units {

// CODATA 2018 exact values.
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// f / (2 pi) in MHz -> angular frequency in rad/s.
double mhz_to_angular(double f_mhz);

// Express f/(2 pi) [MHz] in units of the reference mechanical frequency.
double mhz_to_ratio(double f_mhz, double omega_m1_mhz);

// Bose-Einstein occupancy at angular frequency omega [rad/s] and temperature [K].
double thermal_occupancy(double omega, double temperature);
double temperature_from_occupancy(double omega, double nbar);

// |eps_d| = sqrt(2 kappa P / (hbar omega_d)), kappa and omega_d in rad/s, P in W.
// Result is in 1/s (amplitude rate).
double drive_amplitude_from_power(double kappa, double omega_d, double power);

} // namespace sqom::units
