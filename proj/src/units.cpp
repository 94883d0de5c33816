#include "sqom/units.hpp"

#include <cmath>

#include "sqom/errors.hpp"

namespace sqom::units {

double mhz_to_angular(double f_mhz) { return two_pi * f_mhz * 1e6; }

double mhz_to_ratio(double f_mhz, double omega_m1_mhz) {
    if (!(omega_m1_mhz > 0.0)) throw InvalidParameter("reference frequency must be > 0");
    return f_mhz / omega_m1_mhz;
}

double thermal_occupancy(double omega, double temperature) {
    if (!(temperature > 0.0)) throw InvalidParameter("temperature must be > 0");
    if (!(omega > 0.0)) throw InvalidParameter("frequency must be > 0");
    const double x = hbar * omega / (k_boltzmann * temperature);
    return 1.0 / std::expm1(x);
}

double temperature_from_occupancy(double omega, double nbar) {
    if (!(nbar > 0.0)) throw InvalidParameter("occupancy must be > 0");
    if (!(omega > 0.0)) throw InvalidParameter("frequency must be > 0");
    return hbar * omega / (k_boltzmann * std::log1p(1.0 / nbar));
}

double drive_amplitude_from_power(double kappa, double omega_d, double power) {
    if (!(kappa > 0.0) || !(omega_d > 0.0)) throw InvalidParameter("kappa and omega_d must be > 0");
    if (power < 0.0) throw InvalidParameter("power must be >= 0");
    return std::sqrt(2.0 * kappa * power / (hbar * omega_d));
}

} // namespace sqom::units
