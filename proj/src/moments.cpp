#include "sqom/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "sqom/errors.hpp"
#include "sqom/sweep.hpp"

namespace sqom {

namespace {

using Block = std::array<cd, 36>;

// Copies a row-major 6x6 block into block position (bi, bj), 1-based.
void set_block(MomentMatrix& a, int bi, int bj, const Block& blk) {
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) a(6 * (bi - 1) + r, 6 * (bj - 1) + c) = blk[6 * r + c];
}

constexpr int kReduced = kMoments - 2;
// Full-system indices (0-based) kept in the reduced system.
constexpr std::array<int, kReduced> kept_indices() {
    std::array<int, kReduced> k{};
    int n = 0;
    for (int i = 0; i < kMoments; ++i)
        if (i != 9 && i != 11) k[n++] = i;
    return k;
}
constexpr auto kKept = kept_indices();

double inf_norm(const MomentColumn& v) { return v.cwiseAbs().maxCoeff(); }

} // namespace

MomentVector MomentVector::vacuum() {
    MomentVector v;
    const cd i{0.0, 1.0};
    v(2) = 1.0;
    v(3) = v(4) = v(5) = v(6) = 0.5;
    v(9) = 0.5 * i;
    v(10) = -0.5 * i;
    v(11) = 0.5 * i;
    v(12) = -0.5 * i;
    return v;
}

DriftInputs drift_inputs(const ModelParams& p, const OperatingPoint& op) {
    DriftInputs in;
    in.kappa = p.kappa;
    in.delta_s = op.delta_s;
    in.lambda_eff = op.derived.lambda_eff;
    in.n_s = op.derived.n_s;
    in.m_s = op.derived.m_s;
    in.omega_m = p.omega_m;
    in.gamma_m = p.gamma_m;
    in.nbar_m = p.nbar_m;
    in.lambda_hop = p.lambda_hop;
    return in;
}

DriftSystem build_drift(const DriftInputs& in, const Tolerances& tol) {
    const cd i{0.0, 1.0};
    const cd L1 = in.lambda_eff[0], L2 = in.lambda_eff[1];
    const cd L1c = std::conj(L1), L2c = std::conj(L2);
    const double k = in.kappa, D = in.delta_s, lam = in.lambda_hop;
    const double w1 = in.omega_m[0], w2 = in.omega_m[1];
    const double g1 = in.gamma_m[0], g2 = in.gamma_m[1];

    const cd O1p = i * D + k / 2.0, O1m = i * D - k / 2.0;
    const cd O2p = i * D + g1 + k / 2.0, O2m = i * D - g1 - k / 2.0;
    const cd O3p = i * D + g2 + k / 2.0, O3m = i * D - g2 - k / 2.0;
    const double O4 = g1 + g2;
    const cd z = 0.0;

    DriftSystem sys;
    MomentMatrix& a = sys.a_matrix;
    a.setZero();

    set_block(a, 1, 1, {-k, z, z, z, z, z,
                        z, -k, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, z, -2.0 * g1, z, z,
                        z, z, z, z, z, z,
                        z, z, z, z, z, -2.0 * g2});
    set_block(a, 1, 2, {z, z, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, w1, w1, z, z,
                        z, z, -w1, -w1, z, z,
                        z, z, z, z, w2, w2,
                        z, z, z, z, -w2, -w2});
    set_block(a, 1, 3, {-i * L1c, i * L1, z, z, -i * L2c, i * L2,
                        -i * L1c, i * L1, z, z, -i * L2c, i * L2,
                        z, z, z, z, z, z,
                        z, z, 2.0 * L1c, 2.0 * L1, z, z,
                        z, z, z, z, z, z,
                        z, z, z, z, z, z});
    set_block(a, 1, 4, {z, z, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, z, z, z, -2.0 * lam,
                        z, z, z, z, z, z,
                        2.0 * L2c, 2.0 * L2, z, z, -2.0 * lam, z});

    set_block(a, 2, 1, {z, z, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, -w1, w1, z, z,
                        z, z, -w1, w1, z, z,
                        z, z, z, z, -w2, w2,
                        z, z, z, z, -w2, w2});
    set_block(a, 2, 2, {-2.0 * O1p, z, z, z, z, z,
                        z, 2.0 * O1m, z, z, z, z,
                        z, z, -g1 / 2.0, -g1 / 2.0, z, z,
                        z, z, -g1 / 2.0, -g1 / 2.0, z, z,
                        z, z, z, z, -g2 / 2.0, -g2 / 2.0,
                        z, z, z, z, -g2 / 2.0, -g2 / 2.0});
    set_block(a, 2, 3, {2.0 * i * L1, z, z, z, 2.0 * i * L2, z,
                        z, -2.0 * i * L1c, z, z, z, -2.0 * i * L2c,
                        L1c, L1, z, z, z, z,
                        L1c, L1, z, z, z, z,
                        z, z, z, z, L2c, L2,
                        z, z, z, z, L2c, L2});
    set_block(a, 2, 4, {z, z, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, -lam, z, z, z,
                        z, z, -lam, z, z, z,
                        z, z, -lam, z, z, z,
                        z, z, -lam, z, z, z});

    set_block(a, 3, 1, {z, z, i * L1, z, z, z,
                        z, z, -i * L1c, z, z, z,
                        z, L1, z, z, z, z,
                        L1c, z, z, z, z, z,
                        z, z, z, z, i * L2, z,
                        z, z, z, z, -i * L2c, z});
    set_block(a, 3, 2, {z, z, z, z, z, z,
                        z, z, z, z, z, z,
                        L1c, z, i * L1, z, z, z,
                        z, L1, -i * L1c, z, z, z,
                        z, z, z, z, z, z,
                        z, z, z, z, z, z});
    set_block(a, 3, 3, {-O1p, z, w1, z, z, z,
                        z, O1m, z, w1, z, z,
                        -w1, z, -O2p, z, -lam, z,
                        z, -w1, z, O2m, z, -lam,
                        z, z, z, z, -O1p, z,
                        z, z, z, z, z, O1m});
    set_block(a, 3, 4, {z, z, i * L2, z, z, z,
                        z, z, -i * L2c, z, z, z,
                        z, z, z, z, z, i * L2,
                        z, z, z, z, z, -i * L2c,
                        w1, z, i * L1, z, z, z,
                        z, w1, -i * L1c, z, z, z});

    set_block(a, 4, 1, {z, L2, z, z, z, z,
                        L2c, z, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, z, z, z, z,
                        z, z, -lam, z, z, z,
                        z, z, z, z, -lam, z});
    set_block(a, 4, 2, {L2c, z, z, z, i * L2, z,
                        z, L2, z, z, -i * L2c, z,
                        z, z, z, z, z, z,
                        z, z, z, -lam, -lam, z,
                        z, z, z, z, z, z,
                        z, z, z, z, z, z});
    set_block(a, 4, 3, {-lam, z, z, z, -w2, z,
                        z, -lam, z, z, z, -w2,
                        z, z, z, z, z, z,
                        z, z, L2c, L2, z, z,
                        L2c, L2, z, z, z, z,
                        z, z, z, z, L1c, L1});
    set_block(a, 4, 4, {-O3p, z, z, z, i * L1, z,
                        z, O3m, z, z, -i * L1c, z,
                        z, z, z, z, w2, w1,
                        L1c, L1, z, -O4, -w1, -w2,
                        z, z, -w2, w1, -g2, z,
                        z, z, -w1, w2, z, -g1});

    MomentColumn& b = sys.b_vector;
    b.setZero();
    b(0) = k * in.n_s;
    b(1) = k * (in.n_s + 1.0);
    b(3) = 2.0 * g1 * in.nbar_m[0];
    b(5) = 2.0 * g2 * in.nbar_m[1];
    b(6) = k * std::conj(in.m_s);
    b(7) = k * in.m_s;

    analyse_stability(sys, tol);
    return sys;
}

std::vector<DriftDiscrepancy> compare_drift(const DriftSystem& tabulated, const DriftSystem& derived,
                                            double atol) {
    std::vector<DriftDiscrepancy> out;
    for (int r = 0; r < kMoments; ++r)
        for (int c = 0; c < kMoments; ++c) {
            const cd x = tabulated.a_matrix(r, c), y = derived.a_matrix(r, c);
            if (std::abs(x - y) > atol) out.push_back({r + 1, c + 1, x, y});
        }
    return out;
}

DriftSystem assemble_drift(const DriftInputs& in, const Tolerances& tol) {
    DriftSystem sys = build_drift(in, tol);
    if (in.omega_m[0] == in.omega_m[1] && in.gamma_m[0] == in.gamma_m[1]) return sys;
    DriftSystem oracle = derive_drift_oracle(in, tol);
    auto diff = compare_drift(sys, oracle);
    if (diff.empty()) return sys;
    oracle.discrepancies = std::move(diff);
    return oracle;
}

ReducedSystem reduce_ccr(const DriftSystem& sys) {
    const cd i{0.0, 1.0};
    const MomentMatrix& a = sys.a_matrix;
    ReducedSystem red;
    for (int r = 0; r < kReduced; ++r) {
        const int fr = kKept[r];
        for (int c = 0; c < kReduced; ++c) {
            const int fc = kKept[c];
            cd v = a(fr, fc);
            if (fc == 8) v += a(fr, 9);
            if (fc == 10) v += a(fr, 11);
            red.a(r, c) = v;
        }
        red.b(r) = sys.b_vector(fr) - i * a(fr, 9) - i * a(fr, 11);
    }
    return red;
}

void analyse_stability(DriftSystem& sys, const Tolerances& tol) {
    const ReducedSystem red = reduce_ccr(sys);
    Eigen::ComplexEigenSolver<Eigen::Matrix<cd, kReduced, kReduced>> es(red.a, false);
    const auto& ev = es.eigenvalues();
    double abscissa = -std::numeric_limits<double>::infinity();
    double radius = 0.0;
    for (int n = 0; n < ev.size(); ++n) {
        abscissa = std::max(abscissa, ev(n).real());
        radius = std::max(radius, std::abs(ev(n)));
    }
    if (es.info() != Eigen::Success || !std::isfinite(abscissa)) {
        abscissa = std::numeric_limits<double>::quiet_NaN();
    }
    sys.spectral_abscissa = abscissa;
    sys.spectral_radius = radius;
    sys.stable = abscissa < tol.stability;
}

MomentVector steady_moments(const DriftSystem& sys, const Tolerances& tol) {
    if (!sys.stable) throw Unstable(sys.spectral_abscissa);
    const ReducedSystem red = reduce_ccr(sys);
    Eigen::PartialPivLU<Eigen::Matrix<cd, kReduced, kReduced>> lu(red.a);
    const double rc = lu.rcond();
    if (!(rc > tol.rcond))
        throw SingularSystem("reduced moment system is numerically singular (rcond " +
                             format_double(rc) + ")");
    const Eigen::Matrix<cd, kReduced, 1> y = lu.solve(-red.b);

    MomentVector x;
    for (int r = 0; r < kReduced; ++r) x.x(kKept[r]) = y(r);
    const cd i{0.0, 1.0};
    x.x(9) = x.x(8) - i;
    x.x(11) = x.x(10) - i;

    const double res = inf_norm(sys.a_matrix * x.x + sys.b_vector);
    const double scale = std::max(1.0, inf_norm(sys.b_vector));
    if (!(res < tol.residual * scale))
        throw SingularSystem("steady-state residual " + format_double(res) + " exceeds tolerance");
    return x;
}

namespace {

using Augmented = Eigen::Matrix<cd, kMoments + 1, kMoments + 1>;

// One RK4 step of x' = A x + b as an affine map x -> R x + c, returned as
// the augmented matrix minus the identity.
Augmented rk4_step_increment(const DriftSystem& sys, double h) {
    const MomentMatrix z = h * sys.a_matrix;
    const MomentMatrix id = MomentMatrix::Identity();
    // phi(Z) = I + Z/2 + Z^2/6 + Z^3/24, R = I + Z phi(Z)
    const MomentMatrix phi = id + z * (id / 2.0 + z * (id / 6.0 + z / 24.0));
    Augmented m = Augmented::Zero();
    m.topLeftCorner<kMoments, kMoments>() = z * phi;
    m.topRightCorner<kMoments, 1>() = h * (phi * sys.b_vector);
    return m;
}

int step_count(const DriftSystem& sys, double t_final, double dt) {
    if (!(dt > 0.0) || !(t_final >= 0.0)) throw StepTooLarge("dt must be > 0 and t_final >= 0");
    if (!(dt * sys.spectral_radius < 2.0))
        throw StepTooLarge("dt * spectral radius = " + format_double(dt * sys.spectral_radius) +
                           " is not below 2");
    const double n = std::ceil(t_final / dt);
    if (n > 2e9) throw StepTooLarge("too many integration steps");
    return static_cast<int>(n);
}

} // namespace

MomentVector evolve_moments(const DriftSystem& sys, const MomentVector& x0, double t_final,
                            double dt) {
    const int n = step_count(sys, t_final, dt);
    MomentVector out = x0;
    if (n == 0) return out;
    // The N-fold composition of the step map M = I + D, by repeated squaring.
    // Squaring D (M^2 - I = 2D + D^2) keeps slow modes, whose eigenvalues of
    // M sit next to 1, from losing their digits to cancellation.
    Augmented d = rk4_step_increment(sys, t_final / n);
    Eigen::Matrix<cd, kMoments + 1, 1> v;
    v.head<kMoments>() = x0.x;
    v(kMoments) = 1.0;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) v += d * v;
        if (e > 1) d = 2.0 * d + d * d;
    }
    out.x = v.head<kMoments>();
    return out;
}

MomentVector evolve_moments_stepwise(const DriftSystem& sys, const MomentVector& x0, double t_final,
                                     double dt) {
    const int n = step_count(sys, t_final, dt);
    const double h = n > 0 ? t_final / n : 0.0;
    const MomentMatrix& a = sys.a_matrix;
    const MomentColumn& b = sys.b_vector;
    MomentColumn x = x0.x;
    for (int s = 0; s < n; ++s) {
        const MomentColumn k1 = a * x + b;
        const MomentColumn k2 = a * (x + 0.5 * h * k1) + b;
        const MomentColumn k3 = a * (x + 0.5 * h * k2) + b;
        const MomentColumn k4 = a * (x + h * k3) + b;
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    MomentVector out;
    out.x = x;
    return out;
}

void write_drift(std::ostream& os, const DriftSystem& sys) {
    auto pair = [&](cd v) { os << format_double(v.real()) << ',' << format_double(v.imag()); };
    for (int r = 0; r < kMoments; ++r) {
        for (int c = 0; c < kMoments; ++c) {
            if (c) os << ' ';
            pair(sys.a_matrix(r, c));
        }
        os << '\n';
    }
    os << '\n';
    for (int r = 0; r < kMoments; ++r) {
        if (r) os << ' ';
        pair(sys.b_vector(r));
    }
    os << '\n';
}

} // namespace sqom
