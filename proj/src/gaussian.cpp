#include "sqom/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sqom/errors.hpp"
#include "sqom/sweep.hpp"

namespace sqom {

std::string_view to_string(Mode m) {
    switch (m) {
    case Mode::a: return "a";
    case Mode::q1: return "q1";
    case Mode::q2: return "q2";
    }
    return "?";
}

std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::no_way: return "no-way";
    case Regime::one_way: return "one-way";
    case Regime::two_way: return "two-way";
    }
    return "?";
}

std::string_view bipartition_name(int k) {
    static constexpr std::array<std::string_view, 3> names{"a_q1", "a_q2", "q1_q2"};
    return names.at(k);
}

CovarianceMatrix assemble_cm(const MomentVector& x, double hermiticity_tol) {
    const cd i{0.0, 1.0};
    const double rs2 = 1.0 / std::sqrt(2.0);
    Eigen::Matrix<cd, 6, 6> c = Eigen::Matrix<cd, 6, 6>::Zero();
    auto set = [&](int r, int col, cd v) { c(r, col) = c(col, r) = v; };

    set(0, 0, 0.5 * (x(1) + x(2) + x(7) + x(8)));
    set(1, 1, 0.5 * (x(1) + x(2) - x(7) - x(8)));
    set(0, 1, 0.5 * i * (x(8) - x(7)));

    // (a q, a+ q) pairs for q1, p1, q2, p2
    const std::array<std::array<int, 2>, 4> opt_mech{{{13, 14}, {15, 16}, {17, 18}, {19, 20}}};
    for (int m = 0; m < 4; ++m) {
        const cd aq = x(opt_mech[m][0]), adq = x(opt_mech[m][1]);
        set(0, 2 + m, rs2 * (aq + adq));
        set(1, 2 + m, i * rs2 * (adq - aq));
    }

    set(2, 2, x(3));
    set(3, 3, x(4));
    set(2, 3, 0.5 * (x(9) + x(10)));
    set(4, 4, x(5));
    set(5, 5, x(6));
    set(4, 5, 0.5 * (x(11) + x(12)));
    set(2, 4, x(21));
    set(3, 5, x(22));
    set(2, 5, x(23));
    set(3, 4, x(24));

    const double worst = c.imag().cwiseAbs().maxCoeff();
    if (!(worst <= hermiticity_tol))
        throw NonHermitianMoments("covariance entry has imaginary part " + format_double(worst));
    CovarianceMatrix cm;
    cm.v = c.real();
    return cm;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        om(2 * k, 2 * k + 1) = 1.0;
        om(2 * k + 1, 2 * k) = -1.0;
    }
    return om;
}

Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& v) {
    const int n = static_cast<int>(v.rows()) / 2;
    const Eigen::MatrixXd m = symplectic_form(n) * v;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<double> mod(2 * n);
    for (int k = 0; k < 2 * n; ++k) mod[k] = std::abs(es.eigenvalues()(k));
    std::sort(mod.begin(), mod.end());
    // Eigenvalues come in +-i nu pairs.
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) out(k) = 0.5 * (mod[2 * k] + mod[2 * k + 1]);
    return out;
}

bool is_bona_fide(const Eigen::MatrixXd& v, double tol) {
    if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10) return false;
    return symplectic_spectrum(v).minCoeff() >= 0.5 - tol;
}

Matrix4 reduced_cm(const CovarianceMatrix& cm, Mode mu, Mode nu) {
    const std::array<int, 4> idx{2 * static_cast<int>(mu), 2 * static_cast<int>(mu) + 1,
                                 2 * static_cast<int>(nu), 2 * static_cast<int>(nu) + 1};
    Matrix4 out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = cm.v(idx[r], idx[c]);
    return out;
}

namespace {

struct BlockInvariants {
    double det_a, det_b, det_c, det_v;
};

BlockInvariants invariants(const Matrix4& v) {
    return {v.topLeftCorner<2, 2>().determinant(), v.bottomRightCorner<2, 2>().determinant(),
            v.topRightCorner<2, 2>().determinant(), v.determinant()};
}

double smaller_root(double sigma, double det_v) {
    const double disc = std::max(0.0, sigma * sigma - 4.0 * det_v);
    return std::sqrt(std::max(0.0, 0.5 * (sigma - std::sqrt(disc))));
}

void require_bona_fide_4(const Matrix4& v, Mode mu, Mode nu, double tol) {
    const BlockInvariants inv = invariants(v);
    const double nu_min = smaller_root(inv.det_a + inv.det_b + 2.0 * inv.det_c, inv.det_v);
    if (!(nu_min >= 0.5 - tol))
        throw NonPhysicalReduced("reduced CM " + std::string(to_string(mu)) + "|" +
                                 std::string(to_string(nu)) +
                                 " violates the uncertainty bound (symplectic eigenvalue " +
                                 format_double(nu_min) + ")");
}

void require_bona_fide_6(const Matrix6& v, double tol) {
    const double nu_min = symplectic_spectrum(v).minCoeff();
    if (!(nu_min >= 0.5 - tol))
        throw NonPhysicalReduced("covariance matrix violates the uncertainty bound (symplectic "
                                 "eigenvalue " + format_double(nu_min) + ")");
}

double negativity_from_eta(double eta) { return std::max(0.0, -std::log(2.0 * eta)); }

} // namespace

double eta_minus(const Matrix4& v) {
    const BlockInvariants inv = invariants(v);
    return smaller_root(inv.det_a + inv.det_b - 2.0 * inv.det_c, inv.det_v);
}

double log_negativity(const CovarianceMatrix& cm, Mode mu, Mode nu, double bona_fide_tol) {
    const Matrix4 v = reduced_cm(cm, mu, nu);
    require_bona_fide_4(v, mu, nu, bona_fide_tol);
    return negativity_from_eta(eta_minus(v));
}

double log_negativity_spectral(const CovarianceMatrix& cm, Mode mu, Mode nu) {
    Matrix4 v = reduced_cm(cm, mu, nu);
    const Eigen::Vector4d p(1.0, 1.0, 1.0, -1.0);
    v = p.asDiagonal() * v * p.asDiagonal();
    return negativity_from_eta(symplectic_spectrum(v).minCoeff());
}

double one_vs_two_contangle(const CovarianceMatrix& cm, Mode focus, double bona_fide_tol) {
    require_bona_fide_6(cm.v, bona_fide_tol);
    Eigen::Matrix<double, 6, 1> p = Eigen::Matrix<double, 6, 1>::Ones();
    p(2 * static_cast<int>(focus) + 1) = -1.0;
    const Matrix6 vt = p.asDiagonal() * cm.v * p.asDiagonal();
    const double e = negativity_from_eta(symplectic_spectrum(vt).minCoeff());
    return e * e;
}

ContangleReport residual_contangle_min(const CovarianceMatrix& cm, double monogamy_tol,
                                       double bona_fide_tol) {
    ContangleReport rep;
    const std::array<Mode, 3> modes{Mode::a, Mode::q1, Mode::q2};
    for (int r = 0; r < 3; ++r) {
        const Mode s = modes[(r + 1) % 3], t = modes[(r + 2) % 3];
        const double ers = log_negativity(cm, modes[r], s, bona_fide_tol);
        const double ert = log_negativity(cm, modes[r], t, bona_fide_tol);
        rep.residuals[r] =
            one_vs_two_contangle(cm, modes[r], bona_fide_tol) - ers * ers - ert * ert;
    }
    rep.raw_min = *std::min_element(rep.residuals.begin(), rep.residuals.end());
    rep.r_tau_min = std::max(0.0, rep.raw_min);
    rep.monogamy_violation = rep.raw_min < -monogamy_tol;
    return rep;
}

Regime classify_steering(double forward, double backward, double zero_threshold) {
    const bool f = forward > zero_threshold, b = backward > zero_threshold;
    if (f && b) return Regime::two_way;
    if (f || b) return Regime::one_way;
    return Regime::no_way;
}

double steerability(const CovarianceMatrix& cm, Mode from, Mode to) {
    const Matrix4 v = reduced_cm(cm, from, to);
    const double det_a = v.topLeftCorner<2, 2>().determinant();
    return std::max(0.0, 0.5 * std::log(det_a / (4.0 * v.determinant())));
}

SteeringPair steering_pair(const CovarianceMatrix& cm, Mode mu, Mode nu, double zero_threshold) {
    SteeringPair sp;
    sp.forward = steerability(cm, mu, nu);
    sp.backward = steerability(cm, nu, mu);
    sp.regime = classify_steering(sp.forward, sp.backward, zero_threshold);
    return sp;
}

MeasureReport evaluate_measures(const CovarianceMatrix& cm, const Tolerances& tol) {
    MeasureReport rep;
    for (int k = 0; k < 3; ++k) {
        const auto [mu, nu] = kBipartitions[k];
        rep.e_n[k] = log_negativity(cm, mu, nu, tol.bona_fide);
        rep.steering[k] = steering_pair(cm, mu, nu, tol.zero);
    }
    const std::array<Mode, 3> modes{Mode::a, Mode::q1, Mode::q2};
    for (int r = 0; r < 3; ++r) rep.e_tau_one_vs_two[r] = one_vs_two_contangle(cm, modes[r], tol.bona_fide);
    rep.contangle = residual_contangle_min(cm, tol.monogamy, tol.bona_fide);
    return rep;
}

} // namespace sqom
