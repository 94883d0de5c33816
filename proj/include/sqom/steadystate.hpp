#pragma once

#include <array>
#include <optional>

#include "sqom/model.hpp"

namespace sqom {

struct MeanFieldAux {
    double delta_s = 0.0;
    double alpha_s = 0.0;  // e^{-i theta} a*^2 + e^{i theta} a^2 (real)
    double beta_s = 0.0;
    double beta_p = 0.0;
    cd a1{0.0, 0.0};
    cd a2{0.0, 0.0};
    std::array<double, 2> b{};
};

struct MeanField {
    cd a_s{0.0, 0.0};
    std::array<double, 2> q{};
    std::array<double, 2> p{};  // always exactly zero
    MeanFieldAux aux;
    int iterations = 0;
    double residual = 0.0;
};

// One application of the steady-state map: given q, returns the updated
// (a_s, q) together with the auxiliary coefficients evaluated at the input q.
struct MeanFieldUpdate {
    cd a_s;
    std::array<double, 2> q;
    MeanFieldAux aux;
};
MeanFieldUpdate mean_field_map(const ModelParams& p, const DerivedQuantities& dq,
                               const std::array<double, 2>& q);

// Damped fixed-point solve. Requires a PhysicalDrive.
MeanField solve_mean_field(const ModelParams& p, const Tolerances& tol = {});

double effective_detuning(const MeanField& mf, const DerivedQuantities& dq);
// Effective drive mode: Delta_s = omega_s - beta_s with a user-chosen beta_s.
double effective_detuning(const DerivedQuantities& dq, double beta_s);

// Everything the linearized dynamics needs for one drive direction.
struct OperatingPoint {
    DerivedQuantities derived;
    double delta_s = 0.0;
    std::optional<MeanField> mean_field;
};

OperatingPoint operating_point(const ModelParams& p, Direction d, const Tolerances& tol = {});

} // namespace sqom
