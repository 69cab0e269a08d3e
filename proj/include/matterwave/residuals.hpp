#pragma once

// Residuals of the free material-wave identities. Time derivatives come in
// closed form from the wave; space derivatives are discrete, so a residual
// measures spatial discretization error only and should vanish as O(dx^p)
// for a stencil of order p.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "matterwave/grid.hpp"
#include "matterwave/operators.hpp"
#include "matterwave/wave.hpp"

namespace mw {

struct ResidualReport {
    double l2 = 0.0;
    double linf = 0.0;
    double scale = 0.0;     // L2 norm of the dominant term
    double relative = 0.0;  // l2 / scale, 0 when both vanish
    double order_estimate = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::size_t> n_ladder;
    std::vector<double> relative_ladder;

    /// True when every rung of the ladder (or the single evaluation) is at
    /// floating-point round-off, where no convergence order can be fitted.
    [[nodiscard]] bool at_roundoff(double floor = 1e-12) const
    {
        if (relative_ladder.empty()) return relative < floor;
        for (double r : relative_ladder)
            if (!(r < floor)) return false;
        return true;
    }
};

namespace detail {
inline double relative_of(double l2, double scale)
{
    if (scale == 0.0) return l2 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return l2 / scale;
}
} // namespace detail

template <class T>
[[nodiscard]] ResidualReport make_report(const Field<T>& residual, double scale)
{
    ResidualReport r;
    r.l2 = l2_norm(residual);
    r.linf = linf_norm(residual);
    r.scale = scale;
    r.relative = detail::relative_of(r.l2, scale);
    return r;
}

/// Least-squares slope of log(relative residual) against log(1/n). Rungs at
/// round-off are left out; NaN when fewer than two rungs remain.
[[nodiscard]] inline double fit_order(const std::vector<std::size_t>& ns, const std::vector<double>& rel,
                                      double floor = 1e-12)
{
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(rel[i] >= floor) || !std::isfinite(rel[i])) continue;
        xs.push_back(-std::log(static_cast<double>(ns[i])));
        ys.push_back(std::log(rel[i]));
    }
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

inline const std::vector<std::size_t> kDefaultLadder{64, 128, 256, 512};

/// Evaluates `eval(n)` for every n and returns the finest report with the
/// ladder and the fitted order filled in.
[[nodiscard]] inline ResidualReport convergence_study(const std::vector<std::size_t>& ladder,
                                                      const std::function<ResidualReport(std::size_t)>& eval)
{
    detail::require(!ladder.empty(), "convergence_study: empty ladder");
    ResidualReport finest;
    std::vector<double> rel;
    for (std::size_t n : ladder) {
        finest = eval(n);
        rel.push_back(finest.relative);
    }
    finest.n_ladder = ladder;
    finest.relative_ladder = rel;
    finest.order_estimate = fit_order(ladder, rel);
    return finest;
}

enum class WaveField { density, momentum };

namespace detail {
inline void require_moving(const PlaneMaterialWave& w)
{
    require(w.speed() > 0.0, "residual: |u| must be > 0");
}
} // namespace detail

/// lap f - (1/u^2) d2f/dt2 for f = rho or p. Scale is the Laplacian term.
[[nodiscard]] inline ResidualReport wave_residual(const PlaneMaterialWave& w, WaveField field, const Grid& g, double t,
                                                  StencilOrder order = StencilOrder::second)
{
    detail::require_moving(w);
    const double inv_u2 = 1.0 / dot(w.velocity, w.velocity);
    if (field == WaveField::density) {
        const auto lap = laplacian(sample(w, FieldKind::density, g, t), order);
        const auto d2 = sample(w, FieldKind::density, g, t, 2);
        return make_report(axpby(1.0, lap, -inv_u2, d2), l2_norm(lap));
    }
    const auto lap = laplacian(sample_momentum(w, g, t), order);
    const auto d2 = sample_momentum(w, g, t, 2);
    return make_report(axpby(1.0, lap, -inv_u2, d2), l2_norm(lap));
}

/// div p + d rho/dt. Scale is the time-derivative term.
[[nodiscard]] inline ResidualReport continuity_residual(const PlaneMaterialWave& w, const Grid& g, double t,
                                                        StencilOrder order = StencilOrder::second)
{
    detail::require_moving(w);
    const auto div = divergence(sample_momentum(w, g, t), order);
    const auto drho = sample(w, FieldKind::density, g, t, 1);
    return make_report(axpby(1.0, div, 1.0, drho), l2_norm(drho));
}

/// dp/dt + u^2 grad rho. Scale is the time-derivative term.
[[nodiscard]] inline ResidualReport momentum_balance_residual(const PlaneMaterialWave& w, const Grid& g, double t,
                                                              StencilOrder order = StencilOrder::second)
{
    detail::require_moving(w);
    const auto dp = sample_momentum(w, g, t, 1);
    const auto grad = gradient(sample(w, FieldKind::density, g, t), order);
    return make_report(axpby(1.0, dp, dot(w.velocity, w.velocity), grad), l2_norm(dp));
}

/// Grid ladder for a wave: same physical box at every resolution.
[[nodiscard]] inline std::function<Grid(std::size_t)> ladder_grids(const PlaneMaterialWave& w, const Vec3& waves = {1, 1, 1})
{
    return [w, waves](std::size_t n) { return commensurate_grid(w, n, waves); };
}

} // namespace mw
