#pragma once

#include <array>
#include <cmath>

#include "matterwave/grid.hpp"
#include "matterwave/operators.hpp"
#include "matterwave/residuals.hpp"
#include "matterwave/units.hpp"
#include "matterwave/wave.hpp"

namespace mw {

/// (ct, x, y, z)
using FourVector = std::array<double, 4>;
using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Frame moving with velocity beta*c along +x relative to the rest frame.
struct LorentzFrame {
    double beta = 0.0;
    double gamma = 1.0;
    Matrix4 matrix{};
};

[[nodiscard]] inline LorentzFrame make_frame(double beta)
{
    detail::require(std::abs(beta) < 1.0, "make_frame: |beta| must be < 1");
    LorentzFrame f;
    f.beta = beta;
    f.gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double g = f.gamma, bg = beta * f.gamma;
    f.matrix = {{{g, -bg, 0.0, 0.0}, {-bg, g, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}}};
    return f;
}

[[nodiscard]] inline FourVector boost(const LorentzFrame& f, const FourVector& x)
{
    FourVector out{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) out[mu] += f.matrix[mu][nu] * x[nu];
    return out;
}

/// (ct)^2 - x^2 - y^2 - z^2
[[nodiscard]] inline double interval(const FourVector& x)
{
    return x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3];
}

/// Relativistic velocity addition, u' = (u - V) / (1 - u V / c^2).
[[nodiscard]] inline double velocity_transform(double u_x, const LorentzFrame& f, double c = codata_units().c)
{
    const double v = f.beta * c;
    return (u_x - v) / (1.0 - u_x * v / (c * c));
}

struct TransformedQuantities {
    double gamma;
    double rho_rest, rho_moving;        // kg/m^3, rho' = gamma rho
    double phi0_rest, phi0_moving;      // J/m^3, phi0' = gamma phi0
    double volume_rest, volume_moving;  // m^3, V' = V / gamma
    double energy_rest, energy_moving;  // J, phi0 V

    [[nodiscard]] double phi0_ratio() const { return phi0_moving / phi0_rest; }
    [[nodiscard]] double volume_ratio() const { return volume_moving / volume_rest; }
    [[nodiscard]] double energy_ratio() const { return energy_moving / energy_rest; }
};

/// Intrinsic potential, particle volume and integral energy seen from a
/// moving frame: the potential grows by gamma, the volume contracts by
/// gamma, and the integral energy is unchanged.
[[nodiscard]] inline TransformedQuantities transform_wave_quantities(const PlaneMaterialWave& w, const LorentzFrame& f)
{
    TransformedQuantities q{};
    q.gamma = f.gamma;
    q.rho_rest = w.rho0;
    q.rho_moving = f.gamma * w.rho0;
    q.phi0_rest = w.phi0();
    q.phi0_moving = f.gamma * q.phi0_rest;
    q.volume_rest = w.volume;
    q.volume_moving = w.volume / f.gamma;
    q.energy_rest = q.phi0_rest * q.volume_rest;
    q.energy_moving = q.phi0_moving * q.volume_moving;
    return q;
}

/// Wave equations for p_x and rho after the boost, evaluated on rest-frame
/// fields. Both operators pick up the factor (1 - beta^2); the phase speed
/// measured in the rest frame is the transformed velocity u'_x, so the rest
/// frame fields oscillate with omega = |u'_x| |k|.
///
/// With flip_velocity_sign the operator uses (u + V)/(1 + u V/c^2) instead,
/// a deliberately inconsistent phase speed.
[[nodiscard]] inline ResidualReport transformed_wave_residual(const PlaneMaterialWave& w, const LorentzFrame& f,
                                                              const Grid& g, double t = 0.0,
                                                              const UnitSystem& units = codata_units(),
                                                              StencilOrder order = StencilOrder::second,
                                                              bool flip_velocity_sign = false)
{
    detail::require(w.velocity[1] == 0.0 && w.velocity[2] == 0.0,
                    "transformed_wave_residual: motion must be along x");
    const double ux = w.velocity[0];
    const double u_prime = velocity_transform(ux, f, units.c);
    detail::require(u_prime != 0.0, "transformed_wave_residual: transformed velocity vanishes");
    const double u_op = flip_velocity_sign ? velocity_transform(ux, make_frame(-f.beta), units.c) : u_prime;

    const auto in_rest = detuned(w, std::abs(u_prime) * w.wavenumber());
    const double shrink = 1.0 - f.beta * f.beta;
    const double inv_u2 = 1.0 / (u_op * u_op);

    const auto lap_rho = scaled(shrink, laplacian(sample(in_rest, FieldKind::density, g, t), order));
    const auto d2_rho = scaled(shrink, sample(in_rest, FieldKind::density, g, t, 2));
    const auto r_rho = axpby(1.0, lap_rho, -inv_u2, d2_rho);

    // p_x = rho u'_x obeys the same equation scaled by u'_x; report whichever
    // of the two is worse.
    const auto r_px = scaled(u_prime, r_rho);
    const auto lap_px = scaled(u_prime, lap_rho);
    const auto rho_report = make_report(r_rho, l2_norm(lap_rho));
    const auto px_report = make_report(r_px, l2_norm(lap_px));
    return px_report.relative > rho_report.relative ? px_report : rho_report;
}

} // namespace mw
