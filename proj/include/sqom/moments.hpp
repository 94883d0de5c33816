#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sqom/model.hpp"
#include "sqom/steadystate.hpp"

namespace sqom {

inline constexpr int kMoments = 24;

using MomentMatrix = Eigen::Matrix<cd, kMoments, kMoments>;
using MomentColumn = Eigen::Matrix<cd, kMoments, 1>;

// x1..x24:
//   x1 <a+a>   x2 <a a+>  x3 <q1 q1> x4 <p1 p1> x5 <q2 q2> x6 <p2 p2>
//   x7 <a a>   x8 <a+a+>  x9 <q1 p1> x10 <p1 q1> x11 <q2 p2> x12 <p2 q2>
//   x13 <a q1> x14 <a+ q1> x15 <a p1> x16 <a+ p1>
//   x17 <a q2> x18 <a+ q2> x19 <a p2> x20 <a+ p2>
//   x21 <q1 q2> x22 <p1 p2> x23 <q1 p2> x24 <q2 p1>
struct MomentVector {
    MomentColumn x = MomentColumn::Zero();

    // 1-based access matching the list above.
    cd& operator()(int k) { return x(k - 1); }
    cd operator()(int k) const { return x(k - 1); }

    static MomentVector vacuum();
};

// Inputs of the linear moment equations for one direction.
struct DriftInputs {
    double kappa = 1.0;
    double delta_s = 0.0;
    std::array<cd, 2> lambda_eff{};
    double n_s = 0.0;
    cd m_s{0.0, 0.0};
    std::array<double, 2> omega_m{1.0, 1.0};
    std::array<double, 2> gamma_m{1e-5, 1e-5};
    std::array<double, 2> nbar_m{0.0, 0.0};
    double lambda_hop = 0.0;
};

DriftInputs drift_inputs(const ModelParams& p, const OperatingPoint& op);

struct DriftDiscrepancy {
    int row = 0;  // 1-based
    int col = 0;  // 1-based
    cd verbatim;
    cd derived;
};

struct DriftSystem {
    MomentMatrix a_matrix = MomentMatrix::Zero();
    MomentColumn b_vector = MomentColumn::Zero();
    bool stable = false;
    // Max real part over the dynamical eigenvalues. The two CCR
    // combinations x9-x10, x11-x12 are exact constants of motion; their zero
    // eigenvalues are removed before taking the maximum.
    double spectral_abscissa = 0.0;
    double spectral_radius = 0.0;
    // Entries where the tabulated matrix and the derived one disagree.
    std::vector<DriftDiscrepancy> discrepancies;
};

// Tabulated block form of the moment equations.
DriftSystem build_drift(const DriftInputs& in, const Tolerances& tol = {});
// Moment equations derived from the linearized master equation by operator algebra.
DriftSystem derive_drift_oracle(const DriftInputs& in, const Tolerances& tol = {});
// Entries differing by more than atol.
std::vector<DriftDiscrepancy> compare_drift(const DriftSystem& tabulated,
                                            const DriftSystem& derived, double atol = 1e-12);
// Tabulated system, replaced by the derived one (with discrepancies recorded)
// whenever the mechanics are non-degenerate and the two disagree.
DriftSystem assemble_drift(const DriftInputs& in, const Tolerances& tol = {});

// Recomputes stable / spectral_abscissa / spectral_radius from a_matrix.
void analyse_stability(DriftSystem& sys, const Tolerances& tol = {});

// 22x22 system obtained by eliminating x10 = x9 - i and x12 = x11 - i.
struct ReducedSystem {
    Eigen::Matrix<cd, kMoments - 2, kMoments - 2> a;
    Eigen::Matrix<cd, kMoments - 2, 1> b;
};
ReducedSystem reduce_ccr(const DriftSystem& sys);

MomentVector steady_moments(const DriftSystem& sys, const Tolerances& tol = {});

// Classical RK4 with fixed step; dt is shrunk so an integer number of steps
// reaches t_final exactly.
MomentVector evolve_moments(const DriftSystem& sys, const MomentVector& x0, double t_final,
                            double dt);
// Same propagation as an explicit step loop (reference for evolve_moments).
MomentVector evolve_moments_stepwise(const DriftSystem& sys, const MomentVector& x0,
                                     double t_final, double dt);

// Plain-text dump: 24 rows of "re,im" pairs, a blank line, then b as one row.
void write_drift(std::ostream& os, const DriftSystem& sys);

} // namespace sqom
