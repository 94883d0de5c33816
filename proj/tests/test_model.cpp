#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sqom/errors.hpp"
#include "sqom/model.hpp"
#include "sqom/units.hpp"

using namespace sqom;

namespace {

constexpr double kPi = units::pi;

// Two-mode Bogoliubov composition: a -> cosh r a + e^{i th} sinh r a+.
using Bog = std::array<std::array<cd, 2>, 2>;

Bog bogoliubov(double r, double th) {
    const cd e = std::polar(1.0, th);
    return {{{std::cosh(r), e * std::sinh(r)}, {std::conj(e) * std::sinh(r), std::cosh(r)}}};
}

Bog mul(const Bog& x, const Bog& y) {
    Bog z{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) z[i][j] += x[i][k] * y[k][j];
    return z;
}

// Vacuum moments after squeezing by the reservoir and un-squeezing into the
// cavity frame.
ReservoirNoise noise_oracle(double r_d, double th_d, double r_e, double th_e) {
    const Bog t = mul(bogoliubov(r_d, th_d), bogoliubov(r_e, th_e));
    return {std::norm(t[0][1]), t[0][0] * t[0][1]};
}

} // namespace

TEST(PumpFromSqueezing, Examples) {
    EXPECT_EQ(pump_from_squeezing(1.0, 0.0), 0.0);
    // tanh x = (e^{2x} - 1)/(e^{2x} + 1)
    const double t04 = (std::exp(0.4) - 1.0) / (std::exp(0.4) + 1.0);
    EXPECT_NEAR(pump_from_squeezing(1.0, 0.1), 0.5 * t04, 1e-15);
    EXPECT_NEAR(pump_from_squeezing(1.0, 0.1), 0.098688, 1e-6);
    const double t08 = (std::exp(0.8) - 1.0) / (std::exp(0.8) + 1.0);
    EXPECT_NEAR(pump_from_squeezing(2.0, 0.2), t08, 1e-15);
    EXPECT_NEAR(pump_from_squeezing(2.0, 0.2), 0.379949, 1e-6);
}

TEST(PumpFromSqueezing, RoundTripThroughLogFormula) {
    for (double dc : {0.5, 1.0, 1.7})
        for (int k = 0; k <= 150; ++k) {
            const double r = 0.01 * k;
            const double back = squeezing_from_pump(dc, pump_from_squeezing(dc, r));
            EXPECT_NEAR(back, r, 1e-12 * std::max(1.0, r)) << "r=" << r << " dc=" << dc;
        }
}

TEST(EffectiveFrequency, Examples) {
    EXPECT_EQ(effective_frequency(1.0, 0.0), 1.0);
    EXPECT_NEAR(effective_frequency(1.0, 0.1), 0.980328, 1e-6);
    EXPECT_NEAR(effective_frequency(1.2, 0.3), 2.4 / (std::exp(0.6) + std::exp(-0.6)), 1e-15);
    // quoted value 1.011925 is only good to ~3e-4
    EXPECT_NEAR(effective_frequency(1.2, 0.3), 1.011925, 5e-4);
}

TEST(EffectiveFrequency, ClosedFormsAgree) {
    for (double dc : {0.5, 1.0, 1.2, 2.0})
        for (int k = 0; k <= 150; ++k) {
            const double r = 0.01 * k;
            const double xi = pump_from_squeezing(dc, r);
            EXPECT_NEAR(effective_frequency_from_pump(dc, xi, r), effective_frequency(dc, r),
                        1e-12 * dc);
        }
}

TEST(ComStrengths, MatchDefinitions) {
    const ComStrengths c = com_strengths(0.3, 0.25);
    EXPECT_DOUBLE_EQ(c.zeta_s, 0.3 * std::cosh(0.5));
    EXPECT_DOUBLE_EQ(c.zeta_p, 0.3 * std::sinh(0.5));
    // sinh^2 r = (cosh 2r - 1)/2
    EXPECT_NEAR(c.f_drive, 0.3 * (std::cosh(0.5) - 1.0) / 2.0, 1e-15);
}

TEST(ReservoirNoise, PhaseMatchedIsVacuum) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(0.0, 1.5), uth(0.0, 2.0 * kPi);
    for (int k = 0; k < 1000; ++k) {
        const double r = ur(rng), th = uth(rng);
        for (double sign : {1.0, -1.0}) {
            const ReservoirNoise n = reservoir_noise(r, th, r, th + sign * kPi);
            EXPECT_NEAR(n.n_s, 0.0, 1e-12);
            EXPECT_NEAR(std::abs(n.m_s), 0.0, 1e-12);
        }
    }
}

TEST(ReservoirNoise, NoReservoir) {
    const ReservoirNoise n = reservoir_noise(0.1, 0.7, 0.0, 0.0);
    EXPECT_NEAR(n.n_s, std::sinh(0.1) * std::sinh(0.1), 1e-15);
    EXPECT_NEAR(n.n_s, 0.0100334, 1e-7);
    EXPECT_NEAR(std::abs(n.m_s), std::cosh(0.1) * std::sinh(0.1), 1e-15);
    EXPECT_NEAR(std::abs(n.m_s), 0.1006700, 5e-6);
    EXPECT_NEAR(std::arg(n.m_s), 0.7, 1e-12);
}

TEST(ReservoirNoise, InPhaseReservoirDoublesSqueezing) {
    const ReservoirNoise n = reservoir_noise(0.2, 1.3, 0.2, 1.3);
    EXPECT_NEAR(n.n_s, std::sinh(0.4) * std::sinh(0.4), 1e-14);
    EXPECT_NEAR(n.n_s, 0.168703, 5e-5);
}

TEST(ReservoirNoise, MatchesBogoliubovComposition) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ur(0.0, 1.0), uth(0.0, 2.0 * kPi);
    for (int k = 0; k < 500; ++k) {
        const double rd = ur(rng), thd = uth(rng), re = ur(rng), the = uth(rng);
        const ReservoirNoise a = reservoir_noise(rd, thd, re, the);
        const ReservoirNoise b = noise_oracle(rd, thd, re, the);
        EXPECT_NEAR(a.n_s, b.n_s, 1e-12);
        EXPECT_NEAR(std::abs(a.m_s - b.m_s), 0.0, 1e-12);
    }
}

TEST(ReservoirNoise, Physicality) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.0, 1.0), uth(0.0, 2.0 * kPi);
    for (int k = 0; k < 2000; ++k) {
        const ReservoirNoise n = reservoir_noise(ur(rng), uth(rng), ur(rng), uth(rng));
        EXPECT_GE(n.n_s, 0.0);
        EXPECT_LE(std::norm(n.m_s), n.n_s * (n.n_s + 1.0) + 1e-10);
    }
}

TEST(EffectiveCoupling, Examples) {
    const Coupling c0 = effective_coupling(0.16, 0.0, kPi);
    EXPECT_NEAR(std::abs(c0.lambda_eff - cd(0.16)), 0.0, 1e-15);
    ASSERT_TRUE(c0.pi_factor);
    EXPECT_NEAR(*c0.pi_factor, 1.0, 1e-15);

    const Coupling up = effective_coupling(0.16, 0.1, kPi);
    EXPECT_NEAR(std::abs(up.lambda_eff - cd(0.16 * std::exp(0.2))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(up.lambda_eff), 0.195428, 5e-6);
    EXPECT_NEAR(*up.pi_factor, std::exp(0.2), 1e-14);

    const Coupling down = effective_coupling(0.16, 0.1, 0.0);
    EXPECT_NEAR(std::abs(down.lambda_eff - cd(0.16 * std::exp(-0.2))), 0.0, 1e-14);
    EXPECT_NEAR(*down.pi_factor, 0.818731, 1e-6);
}

TEST(EffectiveCoupling, PiAbsentForZeroCoupling) {
    const Coupling c = effective_coupling(0.0, 0.3, 1.0);
    EXPECT_FALSE(c.pi_factor.has_value());
    EXPECT_EQ(c.lambda_eff, cd(0.0));
}

TEST(EffectiveCoupling, PiIndependentOfMagnitude) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const cd g = std::polar(0.1 + u(rng), 2.0 * kPi * u(rng));
        const double r = 1.5 * u(rng), th = 2.0 * kPi * u(rng), s = 0.01 + 100.0 * u(rng);
        EXPECT_NEAR(*effective_coupling(g, r, th).pi_factor, *effective_coupling(s * g, r, th).pi_factor,
                    1e-12);
    }
}

TEST(EffectiveCoupling, UnityWithoutSqueezing) {
    for (double th : {0.0, 1.0, kPi})
        EXPECT_DOUBLE_EQ(*effective_coupling(cd(0.3, -0.2), 0.0, th).pi_factor, 1.0);
}

TEST(Units, ThermalOccupancy) {
    const double w = units::mhz_to_angular(16.0);
    const double t100 = units::temperature_from_occupancy(w, 100.0);
    EXPECT_NEAR(t100 * 1e3, 77.2, 0.05);
    EXPECT_NEAR(units::thermal_occupancy(w, 0.110), 142.7, 0.1);
    for (double n : {1e-3, 0.5, 0.9, 10.0, 100.0, 1e4}) {
        const double t = units::temperature_from_occupancy(w, n);
        EXPECT_NEAR(units::thermal_occupancy(w, t), n, 1e-9 * n);
    }
    EXPECT_LT(units::thermal_occupancy(w, 1e-6), 1e-300);
    double prev = 0.0;
    for (double t = 1e-3; t < 1.0; t *= 1.5) {
        const double n = units::thermal_occupancy(w, t);
        EXPECT_GT(n, prev);
        prev = n;
    }
    EXPECT_THROW(units::thermal_occupancy(w, 0.0), InvalidParameter);
    EXPECT_THROW(units::thermal_occupancy(w, -1.0), InvalidParameter);
    EXPECT_THROW(units::temperature_from_occupancy(w, 0.0), InvalidParameter);
}

TEST(Units, DriveAmplitude) {
    const double k = units::mhz_to_angular(4.9), wd = units::two_pi * 193e12;
    EXPECT_EQ(units::drive_amplitude_from_power(k, wd, 0.0), 0.0);
    const double e = units::drive_amplitude_from_power(k, wd, 65e-6);
    EXPECT_GT(e, 0.0);
    EXPECT_TRUE(std::isfinite(e));
    EXPECT_NEAR(units::drive_amplitude_from_power(k, wd, 130e-6), std::sqrt(2.0) * e, 1e-12 * e);
}

TEST(Units, MhzRatio) {
    EXPECT_DOUBLE_EQ(units::mhz_to_ratio(4.9, 16.0), 0.30625);
    EXPECT_THROW(units::mhz_to_ratio(1.0, 0.0), InvalidParameter);
}

TEST(ModelParams, Invariants) {
    ModelParams p;
    EXPECT_NO_THROW(check_invariants(p));
    auto bad = [](auto mutate) {
        ModelParams q;
        mutate(q);
        EXPECT_THROW(check_invariants(q), InvalidParameter);
    };
    bad([](ModelParams& q) { q.kappa = 0.0; });
    bad([](ModelParams& q) { q.gamma_m[1] = -1e-3; });
    bad([](ModelParams& q) { q.omega_m[0] = 0.0; });
    bad([](ModelParams& q) { q.nbar_m[0] = -0.1; });
    bad([](ModelParams& q) { q.r_d = -0.1; });
    bad([](ModelParams& q) {
        q.r_d = 0.1;
        q.mismatch(Direction::cw).delta_r = -0.2;
    });
    bad([](ModelParams& q) {
        q.r_d = 0.1;
        q.delta_c = -1.0;
    });
}

TEST(ModelParams, NonDegenerateWarning) {
    ModelParams p;
    EXPECT_TRUE(validity_warnings(p).empty());
    p.omega_m[1] = 1.1;
    EXPECT_EQ(validity_warnings(p).size(), 1u);
}

TEST(Derive, PhaseMatchedAndMismatchedDirections) {
    ModelParams p;
    p.r_d = 0.1;
    p.theta_d = kPi;
    p.mismatch(Direction::ccw) = {0.0, kPi};
    p.mismatch(Direction::cw) = {0.4, kPi};
    p.drive = EffectiveDrive{{cd(0.01), cd(0.013125)}, 0.0};
    const DerivedQuantities ccw = derive(p, Direction::ccw);
    const DerivedQuantities cw = derive(p, Direction::cw);
    EXPECT_NEAR(ccw.n_s, 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ccw.m_s), 0.0, 1e-15);
    EXPECT_GT(cw.n_s, 0.0);
    EXPECT_DOUBLE_EQ(cw.delta_r, 0.4);
    EXPECT_NEAR(*ccw.pi_factor[0], std::exp(0.2), 1e-14);
    EXPECT_EQ(ccw.lambda_eff, cw.lambda_eff);
    EXPECT_EQ(ccw.zeta_s[0], 0.0);
}

TEST(Derive, PhysicalModeLeavesCouplingUnset) {
    ModelParams p;
    p.r_d = 0.2;
    p.drive = PhysicalDrive{{0.001, 0.002}, cd(10.0)};
    const DerivedQuantities dq = derive(p, Direction::ccw);
    EXPECT_FALSE(dq.pi_factor[0].has_value());
    EXPECT_DOUBLE_EQ(dq.zeta_s[1], 0.002 * std::cosh(0.4));
}
