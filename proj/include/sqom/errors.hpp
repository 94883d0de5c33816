#pragma once

#include <stdexcept>
#include <string>

namespace sqom {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class NonConvergence : public Error {
public:
    NonConvergence(int iterations, double residual);
    int iterations;
    double residual;
};

class DegenerateDenominator : public Error {
public:
    using Error::Error;
};

class PoleProximity : public Error {
public:
    using Error::Error;
};

class Unstable : public Error {
public:
    explicit Unstable(double spectral_abscissa);
    double spectral_abscissa;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class StepTooLarge : public Error {
public:
    using Error::Error;
};

class NonHermitianMoments : public Error {
public:
    using Error::Error;
};

class NonPhysicalReduced : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    explicit UnknownPreset(const std::string& name);
};

} // namespace sqom
