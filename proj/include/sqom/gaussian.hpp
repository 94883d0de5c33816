#pragma once

#include <array>
#include <string_view>

#include <Eigen/Dense>

#include "sqom/model.hpp"
#include "sqom/moments.hpp"

namespace sqom {

enum class Mode { a = 0, q1 = 1, q2 = 2 };

std::string_view to_string(Mode m);

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix4 = Eigen::Matrix4d;

// Quadrature ordering (X, Y, q1, p1, q2, p2); vacuum variance 1/2.
struct CovarianceMatrix {
    Matrix6 v = Matrix6::Identity() / 2.0;
    static constexpr std::array<std::string_view, 6> labels{"X", "Y", "q1", "p1", "q2", "p2"};
};

CovarianceMatrix assemble_cm(const MomentVector& x, double hermiticity_tol = 1e-9);

// Symplectic form for n modes in (q, p) pair ordering.
Eigen::MatrixXd symplectic_form(int n_modes);
// Moduli of the eigenvalues of i Omega v, one per mode, ascending.
Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& v);
bool is_bona_fide(const Eigen::MatrixXd& v, double tol = 1e-8);

// 4x4 block over the ordered pair (mu, nu).
Matrix4 reduced_cm(const CovarianceMatrix& cm, Mode mu, Mode nu);

// Smallest symplectic eigenvalue of the partial transpose from the block
// invariants of a 4x4 CM.
double eta_minus(const Matrix4& v);
double log_negativity(const CovarianceMatrix& cm, Mode mu, Mode nu, double bona_fide_tol = 1e-8);
// Same quantity from the spectrum of the explicitly transposed matrix.
double log_negativity_spectral(const CovarianceMatrix& cm, Mode mu, Mode nu);

// Squared log-negativity of the split focus|rest, transposing the focus mode.
double one_vs_two_contangle(const CovarianceMatrix& cm, Mode focus, double bona_fide_tol = 1e-8);

struct ContangleReport {
    // E^{r|st} - E^{r|s} - E^{r|t} indexed by focus r (a, q1, q2).
    std::array<double, 3> residuals{};
    double raw_min = 0.0;
    double r_tau_min = 0.0;  // max(0, raw_min)
    bool monogamy_violation = false;
};

ContangleReport residual_contangle_min(const CovarianceMatrix& cm, double monogamy_tol = 1e-9,
                                       double bona_fide_tol = 1e-8);

enum class Regime { no_way, one_way, two_way };

std::string_view to_string(Regime r);
Regime classify_steering(double forward, double backward, double zero_threshold = 1e-10);

struct SteeringPair {
    double forward = 0.0;   // S^{mu -> nu}
    double backward = 0.0;  // S^{nu -> mu}
    Regime regime = Regime::no_way;
};

double steerability(const CovarianceMatrix& cm, Mode from, Mode to);
SteeringPair steering_pair(const CovarianceMatrix& cm, Mode mu, Mode nu,
                           double zero_threshold = 1e-10);

inline constexpr std::array<std::array<Mode, 2>, 3> kBipartitions{{
    {Mode::a, Mode::q1},
    {Mode::a, Mode::q2},
    {Mode::q1, Mode::q2},
}};

std::string_view bipartition_name(int k);

struct MeasureReport {
    std::array<double, 3> e_n{};             // per kBipartitions entry
    std::array<double, 3> e_tau_one_vs_two{}; // focus a, q1, q2
    ContangleReport contangle;
    std::array<SteeringPair, 3> steering{};
};

MeasureReport evaluate_measures(const CovarianceMatrix& cm, const Tolerances& tol = {});

} // namespace sqom
