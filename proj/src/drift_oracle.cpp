// Moment equations from the linearized master equation, obtained by
// expanding commutators of the six fluctuation operators term by term.

#include <array>
#include <stdexcept>
#include <vector>

#include "sqom/moments.hpp"

namespace sqom {

namespace {

enum Gen { A = 0, AD = 1, Q1 = 2, P1 = 3, Q2 = 4, P2 = 5 };
constexpr int kGens = 6;

const cd I{0.0, 1.0};

// [g, h] for the canonical generators; always a c-number.
cd comm(int g, int h) {
    if (g == A && h == AD) return 1.0;
    if (g == AD && h == A) return -1.0;
    if ((g == Q1 && h == P1) || (g == Q2 && h == P2)) return I;
    if ((g == P1 && h == Q1) || (g == P2 && h == Q2)) return -I;
    return 0.0;
}

// Linear combination of generators.
using Lin = std::array<cd, kGens>;

// Ordered product g h -> moment slot (0-based).
int slot(int g, int h) {
    static const auto table = [] {
        std::array<std::array<int, kGens>, kGens> t{};
        for (auto& row : t) row.fill(-1);
        auto both = [&](int g, int h, int k) { t[g][h] = t[h][g] = k - 1; };
        t[AD][A] = 0;
        t[A][AD] = 1;
        t[Q1][Q1] = 2;
        t[P1][P1] = 3;
        t[Q2][Q2] = 4;
        t[P2][P2] = 5;
        t[A][A] = 6;
        t[AD][AD] = 7;
        t[Q1][P1] = 8;
        t[P1][Q1] = 9;
        t[Q2][P2] = 10;
        t[P2][Q2] = 11;
        both(A, Q1, 13);
        both(AD, Q1, 14);
        both(A, P1, 15);
        both(AD, P1, 16);
        both(A, Q2, 17);
        both(AD, Q2, 18);
        both(A, P2, 19);
        both(AD, P2, 20);
        both(Q1, Q2, 21);
        both(P1, P2, 22);
        both(Q1, P2, 23);
        both(Q2, P1, 24);
        return t;
    }();
    return table[g][h];
}

// Defining word of each moment x1..x24.
constexpr std::array<std::array<int, 2>, kMoments> kWords{{
    {AD, A}, {A, AD}, {Q1, Q1}, {P1, P1}, {Q2, Q2}, {P2, P2},
    {A, A}, {AD, AD}, {Q1, P1}, {P1, Q1}, {Q2, P2}, {P2, Q2},
    {A, Q1}, {AD, Q1}, {A, P1}, {AD, P1},
    {A, Q2}, {AD, Q2}, {A, P2}, {AD, P2},
    {Q1, Q2}, {P1, P2}, {Q1, P2}, {Q2, P1},
}};

struct Term {
    cd coef;
    int u, v;
};

// Lindblad-form channel rate * (2 L1 rho L2 - L2 L1 rho - rho L2 L1).
struct Channel {
    cd rate;
    int l1, l2;
};

struct Brownian {
    double gamma, nbar;
    int q, p;
};

class Generator {
public:
    explicit Generator(const DriftInputs& in) {
        const cd L1 = in.lambda_eff[0], L2 = in.lambda_eff[1];
        hamiltonian_ = {
            {in.delta_s, AD, A},
            {in.omega_m[0] / 2.0, P1, P1}, {in.omega_m[0] / 2.0, Q1, Q1},
            {in.omega_m[1] / 2.0, P2, P2}, {in.omega_m[1] / 2.0, Q2, Q2},
            {-L1, AD, Q1}, {-std::conj(L1), A, Q1},
            {-L2, AD, Q2}, {-std::conj(L2), A, Q2},
            {in.lambda_hop, Q1, Q2},
        };
        const double k = in.kappa;
        channels_ = {
            {k / 2.0 * (in.n_s + 1.0), A, AD},
            {k / 2.0 * in.n_s, AD, A},
            {-k / 2.0 * in.m_s, A, A},
            {-k / 2.0 * std::conj(in.m_s), AD, AD},
        };
        brownian_ = {
            {in.gamma_m[0], in.nbar_m[0], Q1, P1},
            {in.gamma_m[1], in.nbar_m[1], Q2, P2},
        };
    }

    // Heisenberg-picture derivative of a generator from the Hamiltonian and
    // the Lindblad channels (the Brownian term is applied to products directly).
    Lin linear(int g) const {
        Lin out{};
        for (const Term& t : hamiltonian_) {
            // i [u v, g] = i (u [v, g] + [u, g] v)
            out[t.u] += I * t.coef * comm(t.v, g);
            out[t.v] += I * t.coef * comm(t.u, g);
        }
        for (const Channel& c : channels_) {
            // rate (L2 [g, L1] + [L2, g] L1)
            out[c.l2] += c.rate * comm(g, c.l1);
            out[c.l1] += c.rate * comm(c.l2, g);
        }
        return out;
    }

    // d<u v>/dt as a row of A plus a constant.
    void product(int u, int v, Eigen::Matrix<cd, 1, kMoments>& row, cd& konst) const {
        const Lin du = linear(u), dv = linear(v);
        for (int g = 0; g < kGens; ++g) {
            if (du[g] != 0.0) row(slot(g, v)) += du[g];
            if (dv[g] != 0.0) row(slot(u, g)) += dv[g];
        }
        for (const Channel& c : channels_) konst += 2.0 * c.rate * comm(c.l2, u) * comm(v, c.l1);
        for (const Brownian& b : brownian_) {
            // -i gamma/2 {[uv, q], p} - gamma nbar [[uv, q], q]
            Lin x{};
            x[u] += comm(v, b.q);
            x[v] += comm(u, b.q);
            for (int g = 0; g < kGens; ++g) {
                if (x[g] == 0.0) continue;
                const cd c = -I * b.gamma / 2.0 * x[g];
                row(slot(g, b.p)) += c;
                row(slot(b.p, g)) += c;
                konst += -b.gamma * b.nbar * x[g] * comm(g, b.q);
            }
        }
    }

private:
    std::vector<Term> hamiltonian_;
    std::vector<Channel> channels_;
    std::vector<Brownian> brownian_;
};

} // namespace

DriftSystem derive_drift_oracle(const DriftInputs& in, const Tolerances& tol) {
    const Generator gen(in);
    DriftSystem sys;
    sys.a_matrix.setZero();
    sys.b_vector.setZero();
    for (int k = 0; k < kMoments; ++k) {
        Eigen::Matrix<cd, 1, kMoments> row = Eigen::Matrix<cd, 1, kMoments>::Zero();
        cd konst = 0.0;
        gen.product(kWords[k][0], kWords[k][1], row, konst);
        sys.a_matrix.row(k) = row;
        sys.b_vector(k) = konst;
    }
    analyse_stability(sys, tol);
    return sys;
}

} // namespace sqom
