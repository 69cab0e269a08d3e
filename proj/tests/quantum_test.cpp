#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "matterwave/quantum.hpp"
#include "support/generators.hpp"

namespace {

constexpr auto kUnits = mw::codata_units();

TEST(KineticOperator, FreeWaveEigenvalue)
{
    const auto w = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    const auto kc = mw::kinetic_operator_check(w, mw::commensurate_grid(w, 256));
    EXPECT_LT(kc.residual.relative, 1e-3);
    // hbar^2 k^2 / 2m = (m/2) u^2 = hbar omega / 2
    EXPECT_LT(mwtest::rel_err(kc.eigenvalue, 0.5 * kUnits.hbar * w.omega), 1e-12);
    EXPECT_LT(mwtest::rel_err(kc.eigenvalue, 0.5 * kUnits.m_e * 1e12), 1e-12);
}

TEST(KineticOperator, DiscreteEigenvalueOracle)
{
    const auto w = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    for (std::size_t n : {32u, 128u}) {
        const auto g = mw::commensurate_grid(w, n);
        const double h = g.spacing(0), k = w.wavenumber();
        const double oracle = kUnits.hbar * kUnits.hbar / (2.0 * w.mass) * 4.0 / (h * h) * std::pow(std::sin(0.5 * k * h), 2);
        EXPECT_LT(mwtest::rel_err(mw::kinetic_operator_check(w, g).discrete_eigenvalue, oracle), 1e-10);
    }
}

TEST(KineticOperator, DoublingSpeedQuadruplesEigenvalue)
{
    mwtest::Gen gen(41);
    for (int i = 0; i < 50; ++i) {
        const auto w = gen.wave_x();
        const auto w2 = mw::make_wave(w.mass, 2.0 * w.velocity);
        const auto a = mw::kinetic_operator_check(w, mw::commensurate_grid(w, 16));
        const auto b = mw::kinetic_operator_check(w2, mw::commensurate_grid(w2, 16));
        EXPECT_NEAR(b.eigenvalue / a.eigenvalue, 4.0, 1e-10);
    }
}

TEST(KineticOperator, IndependentOfAmplitude)
{
    const auto w = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    const auto g = mw::commensurate_grid(w, 128);
    const auto a = mw::kinetic_operator_check(w, g);
    const auto b = mw::kinetic_operator_check(mw::with_rho0(w, 49.0 * w.rho0), g);
    EXPECT_NEAR(b.residual.relative, a.residual.relative, 1e-10 * a.residual.relative);
    EXPECT_NEAR(b.residual.l2, 7.0 * a.residual.l2, 1e-9 * b.residual.l2);
}

TEST(Schrodinger, ConstantPotentialWithAdjustedEnergy)
{
    const auto w = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    const auto g = mw::commensurate_grid(w, 256);
    const auto psi = mw::sample_psi(w, g);
    const double wk = 0.5 * w.mass * 1e12;
    const double v0 = 0.3 * wk;

    mw::SchrodingerSetup s{.mass = w.mass, .potential = mw::constant_potential(v0), .total_energy = wk + v0};
    EXPECT_LT(mw::schrodinger_residual(s, psi).relative, 1e-3);

    // Leaving W_T unadjusted leaves V0 psi behind.
    s.total_energy = wk;
    const auto r = mw::schrodinger_residual(s, psi);
    EXPECT_NEAR(r.l2 / (v0 * mw::l2_norm(psi)), 1.0, 1e-3);

    s.mass = 0.0;
    EXPECT_THROW((void)mw::schrodinger_residual(s, psi), mw::DomainError);
}

TEST(MovingFrame, ShiftsThePotential)
{
    mw::SchrodingerSetup s{.mass = kUnits.m_e, .potential = mw::step_potential(0.0, 1.0, 0.0), .frame_velocity = 2.0};
    const auto at0 = mw::moving_frame_potential(s, 0.0);
    for (double x : {-1.0, -0.1, 0.0, 0.5}) EXPECT_EQ(at0(x), s.potential(x));
    const auto at1 = mw::moving_frame_potential(s, 1.0);
    // The edge moves to x = -u t.
    EXPECT_EQ(at1(-1.5), 1.0);
    EXPECT_EQ(at1(-2.5), 0.0);
    const auto at2 = mw::moving_frame_potential(s, 0.5);
    EXPECT_NE(at1(-1.5), at2(-1.5));
    s.frame_velocity = 0.0;
    EXPECT_THROW((void)mw::moving_frame_potential(s, 1.0), mw::DomainError);
}

TEST(MovingFrame, HarmonicPotential)
{
    mw::SchrodingerSetup s{.mass = kUnits.m_e, .potential = mw::harmonic_potential(2.0, 1.0), .frame_velocity = -3.0};
    const auto v = mw::moving_frame_potential(s, 2.0);
    for (double x : {-2.0, 0.0, 7.0}) EXPECT_DOUBLE_EQ(v(x), (x - 6.0 - 1.0) * (x - 6.0 - 1.0));
}

TEST(Uncertainty, ElectronValues)
{
    const auto w = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    const auto u = mw::uncertainty_product(w);
    EXPECT_LT(mwtest::rel_err(u.delta_k, w.wavenumber()), 1e-12);
    EXPECT_LT(mwtest::rel_err(u.product_kx, std::numbers::pi), 1e-12);
    EXPECT_LT(mwtest::rel_err(u.product_px, kUnits.h / 2.0), 1e-12);
    EXPECT_LT(mwtest::rel_err(u.corrected, kUnits.hbar / 2.0), 1e-12);
    EXPECT_LT(u.chain_mismatch, 1e-12);
}

TEST(Uncertainty, IndependentOfWave)
{
    mwtest::Gen gen(42);
    for (int i = 0; i < 1000; ++i) {
        auto w = gen.wave();
        if (i % 2) w = mw::with_rho0(w, gen.log_uniform(1e-10, 1e10));
        const auto u = mw::uncertainty_product(w);
        EXPECT_LT(mwtest::rel_err(u.delta_k, u.k), 1e-12);
        EXPECT_LT(mwtest::rel_err(u.product_kx, std::numbers::pi), 1e-12);
        EXPECT_LT(mwtest::rel_err(u.product_px, kUnits.h / 2.0), 1e-12);
        EXPECT_LT(mwtest::rel_err(u.corrected, kUnits.hbar / 2.0), 1e-12);
    }
}

TEST(Uncertainty, ZeroSpeedThrows)
{
    auto w = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    w.velocity = {0.0, 0.0, 0.0};
    EXPECT_THROW((void)mw::uncertainty_product(w), mw::DomainError);
}

} // namespace
