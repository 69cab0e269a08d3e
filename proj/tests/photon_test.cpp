#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "matterwave/photon.hpp"
#include "support/generators.hpp"

namespace {

constexpr auto kUnits = mw::codata_units();
constexpr double kPi = std::numbers::pi;

mw::PhotonMode green(double rho0 = 1e-12)
{
    return mw::make_photon_mode(5e14, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, rho0);
}

mw::Grid one_wavelength(const mw::PhotonMode& m, std::size_t n)
{
    return mw::make_grid_1d(n, 2.0 * kPi / m.wavenumber());
}

TEST(PhotonMode, Construction)
{
    const auto m = green();
    EXPECT_NEAR(m.omega(), 2.0 * kPi * 5e14, 1e-3);
    EXPECT_NEAR(2.0 * kPi / m.wavenumber(), kUnits.c / 5e14, 1e-20);
    EXPECT_THROW((void)mw::make_photon_mode(5e14, {1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}, 1.0), mw::DomainError);
    EXPECT_THROW((void)mw::make_photon_mode(0.0, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 1.0), mw::DomainError);
    EXPECT_THROW((void)mw::make_photon_mode(1.0, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, -1.0), mw::DomainError);
}

TEST(PhotonPotentials, PhasePoints)
{
    const auto m = green(2.0);
    const double full = 2.0 * kUnits.c * kUnits.c;
    // theta = 0 at the origin
    auto p = mw::photon_potentials(m, {0.0, 0.0, 0.0}, 0.0);
    EXPECT_EQ(p.phi_k, 0.0);
    EXPECT_DOUBLE_EQ(p.phi_e, full);
    // theta = pi/4
    p = mw::photon_potentials(m, {kPi / 4.0 / m.wavenumber(), 0.0, 0.0}, 0.0);
    EXPECT_NEAR(p.phi_k, full / 2.0, 1e-12 * full);
    EXPECT_NEAR(p.phi_e, full / 2.0, 1e-12 * full);
}

TEST(PhotonPotentials, ComplementaritySweep)
{
    mwtest::Gen gen(61);
    for (int i = 0; i < 1000; ++i) {
        const auto dir = gen.unit_vector();
        const auto et = mw::normalized(mw::cross(dir, gen.unit_vector()));
        const double rho0 = gen.log_uniform(1e-20, 1.0);
        const auto m = mw::make_photon_mode(gen.log_uniform(1e9, 1e20), dir, et, rho0);
        const auto x = gen.vector(1e-3);
        const double t = gen.uniform(0.0, 1e-9);
        const auto p = mw::photon_potentials(m, x, t);
        EXPECT_LT(mwtest::rel_err(p.phi_k + p.phi_e, rho0 * kUnits.c * kUnits.c), 1e-12);
        const auto f = mw::transversal_fields(m, x, t);
        EXPECT_LT(std::abs(mw::gaussian_energy_density(f) - p.phi_e), 1e-12 * rho0 * kUnits.c * kUnits.c);
    }
}

TEST(TransversalFields, OrthogonalTriad)
{
    mwtest::Gen gen(62);
    for (int i = 0; i < 200; ++i) {
        const auto dir = gen.unit_vector();
        const auto et = mw::normalized(mw::cross(dir, gen.unit_vector()));
        const auto m = mw::make_photon_mode(1e15, dir, et, 1.0);
        const auto f = mw::transversal_fields(m, gen.vector(1e-6), 0.0);
        const double s = mw::dot(f.E, f.E) + 1.0;
        EXPECT_LT(std::abs(mw::dot(f.E, f.B)), 1e-12 * s);
        EXPECT_LT(std::abs(mw::dot(f.E, m.e_k())), 1e-12 * std::sqrt(s));
        EXPECT_LT(std::abs(mw::dot(f.B, m.e_k())), 1e-12 * std::sqrt(s));
        EXPECT_NEAR(mw::norm(f.E), mw::norm(f.B), 1e-12 * std::sqrt(s));
    }
}

TEST(TransversalFields, AmplitudeScalesWithRootDensity)
{
    const auto a = mw::transversal_fields(green(1.0), {0.0, 0.0, 0.0}, 0.0);
    const auto b = mw::transversal_fields(green(4.0), {0.0, 0.0, 0.0}, 0.0);
    EXPECT_DOUBLE_EQ(mw::norm(b.E), 2.0 * mw::norm(a.E));
    EXPECT_NEAR(mw::norm(a.E), kUnits.c * std::sqrt(4.0 * kPi), 1e-3);
}

TEST(TransversalFields, FaradayConverges)
{
    const auto m = green();
    const std::vector<std::size_t> ladder{64, 128, 256};
    const auto r = mw::convergence_study(ladder, [&](std::size_t n) {
        return mw::transversal_faraday_residual(m, one_wavelength(m, n), 0.3e-15);
    });
    EXPECT_LT(r.relative, 1e-3);
    EXPECT_NEAR(r.order_estimate, 2.0, 0.3);
}

TEST(PhotonPacket, Admissibility)
{
    mw::PhotonPacket packet;
    const auto m = green(3.0);
    packet.add(m);
    packet.add(mw::make_photon_mode(7e14, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, 1.0));
    EXPECT_EQ(packet.components().size(), 2u);
    EXPECT_THROW(packet.add(m, 3.0 * kUnits.c, 2.0 * 3.0 * kUnits.c * kUnits.c), mw::DomainError);
    EXPECT_THROW(packet.add(m, 1.01 * 3.0 * kUnits.c, 3.0 * kUnits.c * kUnits.c), mw::DomainError);
    EXPECT_EQ(packet.components().size(), 2u);
    EXPECT_EQ(mw::PhotonPacket::admissibility_residual(m, 0.0, 0.0), 0.0);

    const mw::Vec3 x{1e-7, 2e-7, 0.0};
    const double pot = packet.potential_at(x, 0.0);
    const double expected = mw::photon_potentials(m, x, 0.0).phi_e +
                            mw::photon_potentials(packet.components()[1].mode, x, 0.0).phi_e;
    EXPECT_NEAR(pot, expected, 1e-12 * expected);
}

TEST(Transfer, GreenLight)
{
    const auto r = mw::transfer_rate({.nu = 5e14});
    EXPECT_NEAR(r.rate, 1.657e-4, 1e-7);
    EXPECT_LT(mwtest::rel_err(r.energy, kUnits.h * 5e14), 1e-12);
    EXPECT_DOUBLE_EQ(r.duration, 1.0 / 5e14);

    const auto half = mw::transfer_rate({.nu = 5e14, .volume_fraction = 0.5});
    EXPECT_DOUBLE_EQ(half.rate, 0.5 * r.rate);
    const auto twice = mw::transfer_rate({.nu = 5e14, .duration = 2.0 / 5e14});
    EXPECT_DOUBLE_EQ(twice.energy, 2.0 * r.energy);
}

TEST(Transfer, AdditiveOverPeriods)
{
    mwtest::Gen gen(63);
    for (int i = 0; i < 100; ++i) {
        const double nu = gen.log_uniform(1e6, 1e20);
        const int periods = 1 + i % 7;
        const auto r = mw::transfer_rate({.nu = nu, .duration = periods / nu});
        EXPECT_LT(mwtest::rel_err(r.energy, periods * kUnits.h * nu), 1e-12);
    }
}

TEST(Transfer, RejectsBadInput)
{
    EXPECT_THROW((void)mw::transfer_rate({.nu = 0.0}), mw::DomainError);
    EXPECT_THROW((void)mw::transfer_rate({.nu = 1.0, .volume_fraction = 0.0}), mw::DomainError);
    EXPECT_THROW((void)mw::transfer_rate({.nu = 1.0, .volume_fraction = 1.5}), mw::DomainError);
    EXPECT_THROW((void)mw::transfer_rate({.nu = 1.0, .duration = -1.0}), mw::DomainError);
}

TEST(ChargeQuantum, Estimate)
{
    const auto q = mw::charge_quantum();
    EXPECT_NEAR(q.e_estimate, 1.58e-19, 0.005e-19);
    EXPECT_NEAR(q.relative_to_e, -0.0124, 0.001);
    EXPECT_DOUBLE_EQ(q.e_estimate * q.e_estimate, q.beta_f);
    EXPECT_LT(q.chain_residual, 1e-12 * q.a_l_flow);
    EXPECT_FALSE(q.dimensionally_closed);
}

TEST(StructuralBalance, PairedPhotonsCancel)
{
    const auto m = green(1e-6);
    const mw::InteractionPotential a{m, 1.0, 0.0};
    const mw::InteractionPotential b{m, -1.0, 0.0};
    mwtest::Gen gen(64);
    std::vector<mw::Vec3> pts;
    std::vector<double> times;
    for (int i = 0; i < 20; ++i) {
        pts.push_back(gen.vector(1e-6));
        times.push_back(gen.uniform(0.0, 1e-14));
    }
    const auto r = mw::structural_balance(a, b, pts, times);
    EXPECT_EQ(r.max_sum, 0.0);
    EXPECT_EQ(r.max_dt, 0.0);

    const mw::InteractionPotential quarter{m, -1.0, 0.25 / 5e14};
    EXPECT_GT(mw::structural_balance(a, quarter, pts, times).max_sum, 0.1 * 1e-6 * kUnits.c * kUnits.c);

    const auto other = mw::make_photon_mode(6e14, {0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, 1e-6);
    const mw::InteractionPotential c{other, 1.0, 0.0};
    EXPECT_GT(mw::structural_balance(a, c, pts, times).max_sum, 0.0);
}

TEST(StructuralBalance, TimeDerivativeMatchesFiniteDifference)
{
    const mw::InteractionPotential a{green(1e-6), -1.0, 3e-16};
    const mw::Vec3 x{1e-7, 0.0, 0.0};
    for (double t : {0.0, 1e-16, 7e-16}) {
        const double dt = 1e-20;
        const double fd = (a.value(x, t + dt) - a.value(x, t - dt)) / (2.0 * dt);
        const double scale = 1e-6 * kUnits.c * kUnits.c * a.mode.omega();
        EXPECT_NEAR(a.time_derivative(x, t), fd, 1e-5 * scale);
    }
}

TEST(SourceTerm, NullPhotonLeavesFreeWave)
{
    const auto el = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    const auto g = mw::commensurate_grid(el, 256);
    const auto ph = mw::make_photon_mode_k(el.wave_vector, {0.0, 1.0, 0.0}, 0.0);
    EXPECT_LT(mw::source_term(el, ph, g, 0.0).relative, 1e-3);
}

TEST(SourceTerm, PhotonDrivesElectron)
{
    const auto el = mw::make_wave(kUnits.m_e, {1e6, 0.0, 0.0});
    const auto g = mw::commensurate_grid(el, 256);
    const auto ph = mw::make_photon_mode_k(el.wave_vector, {0.0, 1.0, 0.0}, el.rho0);
    const auto r = mw::source_term(el, ph, g, 0.0);
    // Oracle: c^2 ||lap p_ph|| built directly from the photon momentum.
    const auto p_ph = mw::sample_vector(g, 0.0, [&](const mw::Vec3& x) { return mw::photon_momentum_at(ph, x, 0.0); });
    const double oracle = kUnits.c * kUnits.c * mw::l2_norm(mw::laplacian(p_ph));
    EXPECT_LT(mwtest::rel_err(r.l2, oracle), 1e-3);
    EXPECT_GT(r.relative, 1.0);

    const auto off = mw::make_photon_mode_k(1.5 * el.wave_vector, {0.0, 1.0, 0.0}, el.rho0);
    EXPECT_THROW((void)mw::source_term(el, off, g, 0.0), mw::ConfigError);
}

} // namespace
