#include "sqom/steadystate.hpp"

#include <algorithm>
#include <cmath>

#include "sqom/errors.hpp"

namespace sqom {

namespace {

const PhysicalDrive& physical_drive(const ModelParams& p) {
    const auto* phys = std::get_if<PhysicalDrive>(&p.drive);
    if (!phys) throw InvalidParameter("mean-field solve requires the physical drive mode");
    return *phys;
}

double mechanical_denominator(const ModelParams& p) {
    return p.omega_m[0] * p.omega_m[1] - p.lambda_hop * p.lambda_hop;
}

} // namespace

MeanFieldUpdate mean_field_map(const ModelParams& p, const DerivedQuantities& dq,
                               const std::array<double, 2>& q) {
    const PhysicalDrive& drive = physical_drive(p);
    MeanFieldUpdate out;
    MeanFieldAux& aux = out.aux;
    aux.beta_s = dq.zeta_s[0] * q[0] + dq.zeta_s[1] * q[1];
    aux.beta_p = dq.zeta_p[0] * q[0] + dq.zeta_p[1] * q[1];
    aux.delta_s = dq.omega_s - aux.beta_s;

    const cd e_mt = std::polar(1.0, -p.theta_d);
    const double ch = std::cosh(p.r_d), sh = std::sinh(p.r_d);
    aux.a1 = ch + sh * e_mt;
    aux.a2 = ch * e_mt + sh;

    const cd i{0.0, 1.0};
    const double den = (aux.delta_s * aux.delta_s + 0.25 * p.kappa * p.kappa) - aux.beta_p * aux.beta_p;
    out.a_s = -((i * aux.delta_s - 0.5 * p.kappa) * aux.a1 + i * aux.a2 * aux.beta_p) / den *
              drive.epsilon_d;

    const cd a2 = out.a_s * out.a_s;
    aux.alpha_s = 2.0 * std::real(std::polar(1.0, p.theta_d) * a2);
    const double n = std::norm(out.a_s);
    for (int j = 0; j < 2; ++j)
        aux.b[j] = dq.zeta_s[j] * n - 0.5 * dq.zeta_p[j] * aux.alpha_s + dq.f_drive[j];

    const double d = mechanical_denominator(p);
    out.q[0] = (p.omega_m[1] * aux.b[0] - p.lambda_hop * aux.b[1]) / d;
    out.q[1] = (p.omega_m[0] * aux.b[1] - p.lambda_hop * aux.b[0]) / d;
    return out;
}

MeanField solve_mean_field(const ModelParams& p, const Tolerances& tol) {
    physical_drive(p);
    const double d = mechanical_denominator(p);
    if (std::abs(d) <= 1e-12 * p.omega_m[0] * p.omega_m[1])
        throw DegenerateDenominator("omega_m1 * omega_m2 equals lambda^2");

    // Direction only enters through the reservoir, which the mean field ignores.
    const DerivedQuantities dq = derive(p, p.direction);
    std::array<double, 2> q{0.0, 0.0};
    cd a = mean_field_map(p, dq, q).a_s;

    MeanField mf;
    double residual = 0.0;
    int it = 0;
    bool converged = false;
    for (; it < tol.max_iter; ++it) {
        const MeanFieldUpdate upd = mean_field_map(p, dq, q);
        const double scale = std::max({1.0, std::abs(a), std::abs(q[0]), std::abs(q[1])});
        residual = std::max({std::abs(upd.a_s - a), std::abs(upd.q[0] - q[0]),
                             std::abs(upd.q[1] - q[1])}) /
                   scale;
        if (!std::isfinite(residual)) break;
        a += tol.mixing * (upd.a_s - a);
        q[0] += tol.mixing * (upd.q[0] - q[0]);
        q[1] += tol.mixing * (upd.q[1] - q[1]);
        if (residual < tol.solver_tol) {
            converged = true;
            ++it;
            break;
        }
    }
    if (!converged) throw NonConvergence(it, residual);

    const MeanFieldUpdate fin = mean_field_map(p, dq, q);
    mf.a_s = fin.a_s;
    mf.q = q;
    mf.p = {0.0, 0.0};
    mf.aux = fin.aux;
    mf.iterations = it;
    mf.residual = residual;

    const double pole = std::sqrt(mf.aux.delta_s * mf.aux.delta_s + 0.25 * p.kappa * p.kappa);
    if (std::abs(mf.aux.beta_p) >= tol.pole_guard * pole)
        throw PoleProximity("|beta_p| is too close to sqrt(Delta_s^2 + kappa^2/4)");
    return mf;
}

double effective_detuning(const MeanField& mf, const DerivedQuantities& dq) {
    return dq.omega_s - (dq.zeta_s[0] * mf.q[0] + dq.zeta_s[1] * mf.q[1]);
}

double effective_detuning(const DerivedQuantities& dq, double beta_s) { return dq.omega_s - beta_s; }

OperatingPoint operating_point(const ModelParams& p, Direction d, const Tolerances& tol) {
    OperatingPoint op;
    op.derived = derive(p, d);
    if (const auto* eff = std::get_if<EffectiveDrive>(&p.drive)) {
        op.delta_s = effective_detuning(op.derived, eff->beta_s);
        return op;
    }
    const auto& phys = std::get<PhysicalDrive>(p.drive);
    MeanField mf = solve_mean_field(p, tol);
    std::array<cd, 2> g_eff{phys.g_bare[0] * mf.a_s, phys.g_bare[1] * mf.a_s};
    apply_coupling(op.derived, g_eff, p.r_d, p.theta_d);
    op.delta_s = effective_detuning(mf, op.derived);
    op.mean_field = std::move(mf);
    return op;
}

} // namespace sqom
