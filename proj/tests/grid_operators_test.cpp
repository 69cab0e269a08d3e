#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "matterwave/grid.hpp"
#include "matterwave/operators.hpp"
#include "matterwave/parallel.hpp"
#include "matterwave/residuals.hpp"
#include "support/generators.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

mw::ScalarField sine_field(const mw::Grid& g, int cycles)
{
    const double k = 2.0 * kPi * cycles / g.length[0];
    return mw::sample_scalar(g, 0.0, [k](const mw::Vec3& x) { return std::sin(k * x[0]); });
}

TEST(Grid, RejectsBadShapes)
{
    EXPECT_THROW((void)mw::make_grid({4, 1, 1}, {1.0, 1.0, 1.0}), mw::ConfigError);
    EXPECT_THROW((void)mw::make_grid({0, 1, 1}, {1.0, 1.0, 1.0}), mw::ConfigError);
    EXPECT_THROW((void)mw::make_grid({8, 1, 1}, {0.0, 1.0, 1.0}), mw::ConfigError);
    EXPECT_NO_THROW((void)mw::make_grid({8, 1, 16}, {1.0, 1.0, 2.0}));
}

TEST(Grid, IndexingAndPeriodicShift)
{
    const auto g = mw::make_grid({8, 9, 10}, {1.0, 2.0, 3.0});
    EXPECT_EQ(g.size(), 720u);
    for (std::size_t idx : {0u, 17u, 311u, 719u}) {
        const auto c = g.coords(idx);
        EXPECT_EQ(g.index(c[0], c[1], c[2]), idx);
        for (int a = 0; a < 3; ++a) {
            EXPECT_EQ(g.shifted(g.shifted(idx, a, 3), a, -3), idx);
            EXPECT_EQ(g.shifted(idx, a, static_cast<long>(g.n[a])), idx);
        }
    }
    EXPECT_DOUBLE_EQ(g.cell_volume(), (1.0 / 8) * (2.0 / 9) * (3.0 / 10));
}

TEST(Grid, CollapsedAxesForAxisAlignedWave)
{
    const auto w = mw::make_wave(mw::codata_units().m_e, {1e6, 0.0, 0.0});
    const auto g = mw::commensurate_grid(w, 64);
    EXPECT_TRUE(g.active(0));
    EXPECT_FALSE(g.active(1));
    EXPECT_FALSE(g.active(2));
    EXPECT_NEAR(g.length[0], w.wavelength(), 1e-12 * w.wavelength());
    const auto g3 = mw::commensurate_grid(w, 64, {3, 3, 3});
    EXPECT_NEAR(g3.length[0], 3.0 * w.wavelength(), 1e-12 * w.wavelength());
}

TEST(Grid, IncommensurateSamplingThrows)
{
    const auto w = mw::make_wave(mw::codata_units().m_e, {1e6, 0.0, 0.0});
    const auto bad = mw::make_grid_1d(64, 1.5 * w.wavelength());
    EXPECT_THROW((void)mw::sample(w, mw::FieldKind::density, bad, 0.0), mw::ConfigError);
    const auto oblique = mw::make_wave(mw::codata_units().m_e, {1e6, 1e6, 0.0});
    const auto flat = mw::make_grid_1d(64, oblique.wavelength());
    EXPECT_THROW((void)mw::sample_momentum(oblique, flat, 0.0), mw::ConfigError);
}

TEST(Operators, ConstantHasZeroDerivatives)
{
    const auto g = mw::make_grid({8, 12, 16}, {1.0, 2.0, 3.0});
    const auto f = mw::sample_scalar(g, 0.0, [](const mw::Vec3&) { return 3.5; });
    for (auto order : {mw::StencilOrder::second, mw::StencilOrder::fourth}) {
        EXPECT_EQ(mw::linf_norm(mw::gradient(f, order)), 0.0);
        EXPECT_EQ(mw::linf_norm(mw::laplacian(f, order)), 0.0);
    }
}

TEST(Operators, LaplacianMatchesDiscreteEigenvalue)
{
    for (std::size_t n : {16u, 64u, 256u}) {
        const auto g = mw::make_grid_1d(n, 2.0);
        const auto f = sine_field(g, 3);
        const double k = 2.0 * kPi * 3 / 2.0;
        const double h = g.spacing(0);
        const double ev2 = -4.0 / (h * h) * std::pow(std::sin(0.5 * k * h), 2);
        const double ev4 = (-2.0 * std::cos(2.0 * k * h) + 32.0 * std::cos(k * h) - 30.0) / (12.0 * h * h);
        const auto l2 = mw::laplacian(f, mw::StencilOrder::second);
        const auto l4 = mw::laplacian(f, mw::StencilOrder::fourth);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(l2.values[i], ev2 * f.values[i], 1e-9 * std::abs(ev2));
            EXPECT_NEAR(l4.values[i], ev4 * f.values[i], 1e-9 * std::abs(ev4));
        }
    }
}

TEST(Operators, ConvergenceOrderOfLaplacian)
{
    for (auto order : {mw::StencilOrder::second, mw::StencilOrder::fourth}) {
        std::vector<std::size_t> ns{64, 128, 256};
        std::vector<double> rel;
        for (std::size_t n : ns) {
            const auto g = mw::make_grid_1d(n, 1.0);
            const auto f = sine_field(g, 1);
            const double k2 = 4.0 * kPi * kPi;
            const auto err = mw::axpby(1.0, mw::laplacian(f, order), k2, f);
            rel.push_back(mw::l2_norm(err) / (k2 * mw::l2_norm(f)));
        }
        EXPECT_NEAR(mw::fit_order(ns, rel), mw::order_value(order), 0.1);
    }
}

TEST(Operators, VectorIdentities)
{
    mwtest::Gen gen(21);
    const auto g = mw::make_grid({16, 16, 16}, {1.0, 1.0, 1.0});
    // Random trigonometric fields; the discrete identities hold exactly for
    // central differences, up to round-off.
    std::array<double, 9> c{};
    for (auto& v : c) v = gen.uniform(-1.0, 1.0);
    auto vf = mw::sample_vector(g, 0.0, [&](const mw::Vec3& x) {
        const double t = 2.0 * kPi;
        return mw::Vec3{c[0] * std::sin(t * x[1]) + c[1] * std::cos(2 * t * x[2]),
                        c[2] * std::sin(t * x[0] + t * x[2]) + c[3] * std::cos(t * x[1]),
                        c[4] * std::cos(3 * t * x[0]) + c[5] * std::sin(t * x[1] - t * x[0])};
    });
    auto sf = mw::sample_scalar(g, 0.0, [&](const mw::Vec3& x) {
        const double t = 2.0 * kPi;
        return c[6] * std::sin(t * x[0]) * std::cos(t * x[1]) + c[7] * std::sin(2 * t * x[2]) + c[8];
    });
    for (auto order : {mw::StencilOrder::second, mw::StencilOrder::fourth}) {
        const double scale_dc = mw::l2_norm(mw::curl(vf, order)) * 2.0 * kPi * 3;
        EXPECT_LT(mw::l2_norm(mw::divergence(mw::curl(vf, order), order)), 1e-12 * scale_dc);
        const double scale_cg = mw::l2_norm(mw::gradient(sf, order)) * 2.0 * kPi * 2;
        EXPECT_LT(mw::l2_norm(mw::curl(mw::gradient(sf, order), order)), 1e-12 * scale_cg);
    }
}

TEST(Operators, CollapsedAxisDerivativeIsZero)
{
    const auto g = mw::make_grid({16, 1, 1}, {1.0, 1.0, 1.0});
    const auto f = sine_field(g, 1);
    const auto grad = mw::gradient(f);
    for (const auto& v : grad.values) {
        EXPECT_EQ(v[1], 0.0);
        EXPECT_EQ(v[2], 0.0);
    }
    EXPECT_EQ(mw::linf_norm(mw::partial(f, 2)), 0.0);
}

TEST(Norms, IntegrateAndL2)
{
    const auto g = mw::make_grid_1d(64, 2.0);
    const auto f = sine_field(g, 2);
    // Mean of sin^2 over whole periods is exactly 1/2 on a uniform grid.
    EXPECT_NEAR(mw::l2_norm(f), std::sqrt(1.0), 1e-14);
    EXPECT_NEAR(mw::integrate(f), 0.0, 1e-14);
    const auto one = mw::sample_scalar(g, 0.0, [](const mw::Vec3&) { return 1.0; });
    EXPECT_NEAR(mw::integrate(one), 2.0, 1e-14);
}

TEST(PairwiseSum, MatchesKahanOracle)
{
    mwtest::Gen gen(22);
    std::vector<double> v(10007);
    for (auto& x : v) x = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.uniform(-3.0, 3.0));
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        const double y = x - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    EXPECT_NEAR(mw::pairwise_sum(v), s, 1e-10);
    EXPECT_EQ(mw::pairwise_sum(std::vector<double>{}), 0.0);
    EXPECT_EQ(mw::pairwise_sum(std::vector<double>{2.5}), 2.5);
}

TEST(Parallel, ThreadCountDoesNotChangeResults)
{
    const mw::Grid g = mw::make_grid({32, 32, 32}, {1.0, 1.0, 1.0});
    auto run = [&](unsigned threads) {
        mw::set_max_threads(threads);
        const auto f = mw::sample_vector(g, 0.0, [&](const mw::Vec3& x) {
            return mw::Vec3{std::sin(2 * kPi * x[0]), std::cos(2 * kPi * x[1]) * x[2], std::sin(4 * kPi * x[2])};
        });
        const auto lap = mw::laplacian(f, mw::StencilOrder::fourth);
        const auto div = mw::divergence(mw::curl(f));
        return std::make_pair(lap.values, mw::l2_norm(div));
    };
    const auto a = run(1);
    const auto b = run(4);
    mw::set_max_threads(1);
    EXPECT_EQ(a.first, b.first);
    EXPECT_EQ(a.second, b.second);
}

} // namespace
