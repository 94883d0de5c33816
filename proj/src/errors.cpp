#include "sqom/errors.hpp"

#include <sstream>

namespace sqom {

namespace {
std::string nonconvergence_message(int iterations, double residual) {
    std::ostringstream os;
    os << "mean-field iteration did not converge after " << iterations
       << " iterations (last residual " << residual << ")";
    return os.str();
}

std::string unstable_message(double abscissa) {
    std::ostringstream os;
    os << "drift matrix is not Hurwitz (spectral abscissa " << abscissa << ")";
    return os.str();
}
} // namespace

NonConvergence::NonConvergence(int iterations_, double residual_)
    : Error(nonconvergence_message(iterations_, residual_)),
      iterations(iterations_),
      residual(residual_) {}

Unstable::Unstable(double abscissa)
    : Error(unstable_message(abscissa)), spectral_abscissa(abscissa) {}

UnknownPreset::UnknownPreset(const std::string& name) : Error("unknown preset: " + name) {}

} // namespace sqom
