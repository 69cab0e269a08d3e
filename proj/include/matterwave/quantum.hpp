#pragma once

// Time-free Schroedinger operator built from the material wave, the
// moving-frame potential, and the uncertainty product that follows from
// attributing the k-uncertainty to the neglected intrinsic potential.

#include <cmath>
#include <functional>
#include <numbers>

#include "matterwave/grid.hpp"
#include "matterwave/operators.hpp"
#include "matterwave/residuals.hpp"
#include "matterwave/units.hpp"
#include "matterwave/wave.hpp"

namespace mw {

/// One-dimensional potential energy V(x), J per particle.
using Potential = std::function<double(double)>;

[[nodiscard]] inline Potential constant_potential(double v0)
{
    return [v0](double) { return v0; };
}

[[nodiscard]] inline Potential step_potential(double left, double right, double edge)
{
    return [=](double x) { return x < edge ? left : right; };
}

[[nodiscard]] inline Potential harmonic_potential(double stiffness, double center = 0.0)
{
    return [=](double x) { return 0.5 * stiffness * (x - center) * (x - center); };
}

struct SchrodingerSetup {
    double mass = 0.0;               // kg
    Potential potential = constant_potential(0.0);
    double total_energy = 0.0;       // J
    double frame_velocity = 0.0;     // m/s, along x
};

/// psi = psi0 sin(k.x - omega t) on the grid.
[[nodiscard]] inline ScalarField sample_psi(const PlaneMaterialWave& w, const Grid& g, double t = 0.0)
{
    check_commensurate(g, w.wave_vector);
    return sample_scalar(g, t, [&](const Vec3& x) { return w.psi0 * std::sin(w.phase(x, t)); });
}

struct KineticCheck {
    ResidualReport residual;
    double eigenvalue;           // hbar^2 k^2 / 2m, closed form
    double discrete_eigenvalue;  // Rayleigh quotient of the discrete operator
};

/// (-hbar^2/2m) lap psi - (m/2)|u|^2 psi on a sampled free wave.
[[nodiscard]] inline KineticCheck kinetic_operator_check(const PlaneMaterialWave& w, const Grid& g,
                                                         const UnitSystem& units = codata_units(),
                                                         StencilOrder order = StencilOrder::second)
{
    const double coeff = -units.hbar * units.hbar / (2.0 * w.mass);
    const double wk = 0.5 * w.mass * dot(w.velocity, w.velocity);
    const auto psi = sample_psi(w, g);
    const auto kin = scaled(coeff, laplacian(psi, order));
    const auto res = axpby(1.0, kin, -wk, psi);

    std::vector<double> num(psi.values.size()), den(psi.values.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        num[i] = psi.values[i] * kin.values[i];
        den[i] = psi.values[i] * psi.values[i];
    }
    const double k = w.wavenumber();
    return KineticCheck{
        .residual = make_report(res, wk * l2_norm(psi)),
        .eigenvalue = units.hbar * units.hbar * k * k / (2.0 * w.mass),
        .discrete_eigenvalue = pairwise_sum(num) / pairwise_sum(den),
    };
}

/// (-hbar^2/2m) lap psi + V psi - W_T psi. V is evaluated at each grid x.
/// Scale is |W_T| ||psi||.
[[nodiscard]] inline ResidualReport schrodinger_residual(const SchrodingerSetup& s, const ScalarField& psi,
                                                         const UnitSystem& units = codata_units(),
                                                         StencilOrder order = StencilOrder::second)
{
    detail::require(s.mass > 0.0, "schrodinger_residual: mass must be > 0");
    const double coeff = -units.hbar * units.hbar / (2.0 * s.mass);
    const auto lap = laplacian(psi, order);
    ScalarField res(psi.grid, psi.time);
    parallel_for(res.values.size(), [&](std::size_t i) {
        const double v = s.potential(psi.grid.point(i)[0]);
        res.values[i] = coeff * lap.values[i] + (v - s.total_energy) * psi.values[i];
    });
    return make_report(res, std::abs(s.total_energy) * l2_norm(psi));
}

/// V(x + u t): the potential seen from a frame moving with velocity u.
[[nodiscard]] inline Potential moving_frame_potential(const SchrodingerSetup& s, double t)
{
    detail::require(s.frame_velocity != 0.0, "moving_frame_potential: frame velocity must be nonzero");
    const double shift = s.frame_velocity * t;
    return [v = s.potential, shift](double x) { return v(x + shift); };
}

struct UncertaintyResult {
    double k;             // 1/m
    double delta_v;       // J, potential uncertainty = intrinsic potential m u^2
    double delta_k;       // 1/m
    double delta_x;       // m, half a wavelength
    double product_kx;    // dimensionless, pi for every wave
    double product_px;    // J s, h/2
    double corrected;     // J s, product_px / 2pi = hbar/2
    double chain_mismatch;  // |hbar dk - m u| / (m u); zero when the derivation closes
};

[[nodiscard]] inline UncertaintyResult uncertainty_product(const PlaneMaterialWave& w,
                                                           const UnitSystem& units = codata_units())
{
    detail::require(w.speed() > 0.0, "uncertainty_product: |u| must be > 0");
    const double k = w.wavenumber();
    const double u = w.speed();
    const double dv = w.mass * u * u;
    // hbar dk = m dV / (hbar k)
    const double dk = w.mass * dv / (units.hbar * units.hbar * k);
    const double dx = 0.5 * w.wavelength();
    const double pkx = dk * dx;
    const double ppx = units.hbar * pkx;
    const double mu = w.mass * u;
    return UncertaintyResult{
        .k = k,
        .delta_v = dv,
        .delta_k = dk,
        .delta_x = dx,
        .product_kx = pkx,
        .product_px = ppx,
        .corrected = ppx / (2.0 * std::numbers::pi),
        .chain_mismatch = std::abs(units.hbar * dk - mu) / mu,
    };
}

} // namespace mw
