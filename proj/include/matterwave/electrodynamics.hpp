#pragma once

// Electric and magnetic fields defined from the momentum density and the
// intrinsic potential of a material wave:
//
//   sigma_bar E = -grad phi + dp/dt
//   B           = -(1/sigma_bar) curl p          (intrinsic, photons)
//   B           = -(1/(2 sigma_bar)) curl p      (external, electrons)
//
// together with the residual checks of the Maxwell equations they imply,
// magnetostatics of rotating charge, and the Ampere-law correspondence.
//
// sigma_bar = (e/m_e) * mean density of the wave under test.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "matterwave/grid.hpp"
#include "matterwave/operators.hpp"
#include "matterwave/residuals.hpp"
#include "matterwave/units.hpp"
#include "matterwave/wave.hpp"

namespace mw {

enum class FieldConvention { intrinsic, external };

/// Curl prefactor: 1 for intrinsic fields, 1/2 for external ones.
[[nodiscard]] constexpr double convention_factor(FieldConvention c) { return c == FieldConvention::intrinsic ? 1.0 : 0.5; }

[[nodiscard]] inline double sigma_bar_of(const PlaneMaterialWave& w, const UnitSystem& units = codata_units())
{
    return units.sigma_bar(w.mean_density());
}

namespace detail {
// 1/sigma_bar, with an empty wave mapping to zero fields.
inline double inverse_sigma(double sigma_bar) { return sigma_bar == 0.0 ? 0.0 : 1.0 / sigma_bar; }
} // namespace detail

/// E = (-grad phi + dp/dt) / sigma_bar, discrete gradient, exact dp/dt.
[[nodiscard]] inline VectorField efield_from_wave(const PlaneMaterialWave& w, const Grid& g, double t,
                                                  const UnitSystem& units = codata_units(),
                                                  StencilOrder order = StencilOrder::second)
{
    const double inv = detail::inverse_sigma(sigma_bar_of(w, units));
    const auto grad_phi = gradient(sample(w, FieldKind::potential, g, t), order);
    const auto dp = sample_momentum(w, g, t, 1);
    return axpby(-inv, grad_phi, inv, dp);
}

/// Norm of sigma_bar E relative to dp/dt; vanishes for a free wave.
[[nodiscard]] inline ResidualReport free_efield_residual(const PlaneMaterialWave& w, const Grid& g, double t,
                                                         StencilOrder order = StencilOrder::second)
{
    const auto grad_phi = gradient(sample(w, FieldKind::potential, g, t), order);
    const auto dp = sample_momentum(w, g, t, 1);
    return make_report(axpby(-1.0, grad_phi, 1.0, dp), l2_norm(dp));
}

[[nodiscard]] inline VectorField bfield_from_wave(const PlaneMaterialWave& w, const Grid& g, double t,
                                                  FieldConvention convention = FieldConvention::intrinsic,
                                                  const UnitSystem& units = codata_units(),
                                                  StencilOrder order = StencilOrder::second)
{
    const double f = convention_factor(convention) * detail::inverse_sigma(sigma_bar_of(w, units));
    return scaled(-f, curl(sample_momentum(w, g, t), order));
}

struct RotationState {
    Vec3 omega{};  // rad/s
    Vec3 r{};      // m
    double rho = 0.0;
};

/// Field of rigidly rotating charge, |B| = (rho/sigma_bar)|omega| for
/// external fields, twice that for intrinsic ones; B is parallel to omega.
[[nodiscard]] inline Vec3 bfield_from_rotation(const RotationState& s, double sigma_bar,
                                               FieldConvention convention = FieldConvention::external)
{
    detail::require(sigma_bar > 0.0, "bfield_from_rotation: sigma_bar must be > 0");
    return (2.0 * convention_factor(convention) * s.rho / sigma_bar) * s.omega;
}

struct MaxwellResiduals {
    ResidualReport faraday;        // curl E + dB/dt
    ResidualReport ampere_vacuum;  // (1/u^2) dE/dt - curl B
    ResidualReport div_b;          // div B
};

/// Maxwell-form residuals for the fields of a material wave. The scale of
/// each residual is the norm of its largest constituent term before
/// cancellation.
[[nodiscard]] inline MaxwellResiduals maxwell_residuals(const PlaneMaterialWave& w, const Grid& g, double t,
                                                        const UnitSystem& units = codata_units(),
                                                        StencilOrder order = StencilOrder::second)
{
    detail::require(w.speed() > 0.0, "maxwell_residuals: |u| must be > 0");
    const double inv = detail::inverse_sigma(sigma_bar_of(w, units));
    const double inv_u2 = 1.0 / dot(w.velocity, w.velocity);
    const double k = w.wavenumber();

    const auto p = sample_momentum(w, g, t);
    const auto dp = sample_momentum(w, g, t, 1);
    const auto d2p = sample_momentum(w, g, t, 2);
    const auto phi = sample(w, FieldKind::potential, g, t);
    const auto dphi = sample(w, FieldKind::potential, g, t, 1);

    const auto e = axpby(-inv, gradient(phi, order), inv, dp);
    const auto de = axpby(-inv, gradient(dphi, order), inv, d2p);
    const auto b = scaled(-inv, curl(p, order));
    const auto db = scaled(-inv, curl(dp, order));

    MaxwellResiduals out;
    out.faraday = make_report(axpby(1.0, curl(e, order), 1.0, db), k * inv * l2_norm(dp));
    out.ampere_vacuum = make_report(axpby(inv_u2, de, -1.0, curl(b, order)), inv_u2 * inv * l2_norm(d2p));
    out.div_b = make_report(divergence(b, order), k * k * inv * l2_norm(p));
    return out;
}

/// Maxwell residuals on a refinement ladder, each with its fitted order.
[[nodiscard]] inline MaxwellResiduals maxwell_convergence(const PlaneMaterialWave& w,
                                                          const std::vector<std::size_t>& ladder,
                                                          const Vec3& waves = {1, 1, 1}, double t = 0.0,
                                                          const UnitSystem& units = codata_units(),
                                                          StencilOrder order = StencilOrder::second)
{
    std::vector<MaxwellResiduals> runs;
    for (std::size_t n : ladder) runs.push_back(maxwell_residuals(w, commensurate_grid(w, n, waves), t, units, order));
    auto pick = [&](ResidualReport MaxwellResiduals::*member) {
        std::size_t i = 0;
        return convergence_study(ladder, [&](std::size_t) { return runs[i++].*member; });
    };
    return MaxwellResiduals{pick(&MaxwellResiduals::faraday), pick(&MaxwellResiduals::ampere_vacuum),
                            pick(&MaxwellResiduals::div_b)};
}

/// Sampled E and B with their exact second time derivatives.
struct EMFieldPair {
    VectorField E;
    VectorField B;
    VectorField d2E;
    VectorField d2B;
    double sigma_bar = 0.0;
    FieldConvention convention = FieldConvention::intrinsic;
};

/// lap F - (1/u^2) d2F/dt2 for F = E and B together. Scale is the
/// Laplacian term.
[[nodiscard]] inline ResidualReport em_wave_residual(const EMFieldPair& f, double u,
                                                     StencilOrder order = StencilOrder::second)
{
    detail::require(u > 0.0, "em_wave_residual: u must be > 0");
    const double inv_u2 = 1.0 / (u * u);
    const auto lap_e = laplacian(f.E, order);
    const auto lap_b = laplacian(f.B, order);
    const auto re = axpby(1.0, lap_e, -inv_u2, f.d2E);
    const auto rb = axpby(1.0, lap_b, -inv_u2, f.d2B);
    const auto e = make_report(re, l2_norm(lap_e));
    const auto b = make_report(rb, l2_norm(lap_b));
    ResidualReport r;
    r.l2 = std::hypot(e.l2, b.l2);
    r.linf = std::max(e.linf, b.linf);
    r.scale = std::hypot(e.scale, b.scale);
    r.relative = detail::relative_of(r.l2, r.scale);
    return r;
}

struct VectorPotentialReport {
    VectorField A;
    double ratio_min;         // min over points of A.p/|p|^2, -u everywhere p != 0
    double ratio_max;
    ResidualReport gauge;     // div A + (1/u) dphi/dt
    bool out_of_derivation;   // |u| != c: the relation is derived for u = c only
};

/// A = -u p with the gauge residual div A + (1/u) dphi/dt. The relation is
/// derived for u = c; other speeds are evaluated with u in place of c and
/// flagged.
[[nodiscard]] inline VectorPotentialReport vector_potential_relation(const PlaneMaterialWave& w, const Grid& g, double t,
                                                                     const UnitSystem& units = codata_units(),
                                                                     StencilOrder order = StencilOrder::second)
{
    const double u = w.speed();
    detail::require(u > 0.0, "vector_potential_relation: |u| must be > 0");
    const auto p = sample_momentum(w, g, t);
    auto a = scaled(-u, p);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double pp = dot(p.values[i], p.values[i]);
        if (pp == 0.0) continue;
        const double ratio = dot(a.values[i], p.values[i]) / pp;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    if (lo > hi) lo = hi = -u;
    const auto dphi = sample(w, FieldKind::potential, g, t, 1);
    auto gauge = make_report(axpby(1.0, divergence(a, order), 1.0 / u, dphi), l2_norm(dphi) / u);
    const bool off = std::abs(u - units.c) > 1e-12 * units.c;
    return VectorPotentialReport{std::move(a), lo, hi, gauge, off};
}

struct LorentzForces {
    Vec3 lorentz;      // F_L
    Vec3 centrifugal;  // F_C
    Vec3 net;
};

/// Lorentz force of charge rotating in its own field against the
/// centrifugal force in the co-rotating frame. sigma_ratio = sigma/sigma_bar,
/// 1 for the average charge density.
[[nodiscard]] inline LorentzForces lorentz_force_balance(const RotationState& s, double sigma_ratio = 1.0)
{
    const Vec3 wwr = cross(s.omega, cross(s.omega, s.r));  // -omega^2 r for omega perpendicular to r
    const Vec3 fl = (sigma_ratio * s.rho) * wwr;
    const Vec3 fc = (-s.rho) * wwr;
    return LorentzForces{fl, fc, fl + fc};
}

/// Electron flow in a homogeneous field B0 e_z:
///   u(r) = u0 e_z + B0 (e/m) e_z x r.
struct HomogeneousFieldOrbit {
    double b0;
    double u0;
    double e_over_m;

    [[nodiscard]] Vec3 velocity(const Vec3& r) const
    {
        return Vec3{0.0, 0.0, u0} + (b0 * e_over_m) * cross(Vec3{0.0, 0.0, 1.0}, r);
    }

    /// External field of the flow, (rho/(2 sigma_bar)) curl u with
    /// rho/sigma_bar = m/e, by central differences of step h around r.
    [[nodiscard]] Vec3 recovered_field(const Vec3& r, double h = 1e-3) const
    {
        auto d = [&](int comp, int axis) {
            Vec3 rp = r, rm = r;
            rp[axis] += h;
            rm[axis] -= h;
            return (velocity(rp)[comp] - velocity(rm)[comp]) / (2.0 * h);
        };
        const Vec3 c{d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)};
        return (0.5 / e_over_m) * c;
    }
};

[[nodiscard]] inline HomogeneousFieldOrbit homogeneous_field_orbit(double b0, double u0,
                                                                   const UnitSystem& units = codata_units())
{
    return HomogeneousFieldOrbit{b0, u0, units.e / units.m_e};
}

/// Static current field j(r, t).
using CurrentField = std::function<Vec3(const Vec3&, double)>;

struct AmpereResult {
    VectorField J;            // (m c / (8 pi e sigma)) grad div j
    VectorField curl_b;       // (m / (2 e sigma)) grad div j
    ResidualReport residual;  // (4 pi / c) J - curl B
    ScalarField phi_ed;       // (m c / (8 pi e)) div u, u = j / sigma
};

/// Current density and Ampere-law check for a static current field of
/// constant charge density sigma. Derivatives are central differences of
/// the callable with the grid spacing as step, so linear and quadratic
/// fields need not be periodic.
[[nodiscard]] inline AmpereResult ampere_current(const CurrentField& j, double sigma, const Grid& g,
                                                 const UnitSystem& units = codata_units())
{
    detail::require(sigma != 0.0, "ampere_current: sigma must be nonzero");
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.point(i);
        const Vec3 a = j(x, 0.0), b = j(x, 1.0);
        if (norm(a - b) > 1e-14 * std::max(norm(a), norm(b)))
            throw DomainError("ampere_current: current field must be time-independent");
    }

    Vec3 h{};
    for (int a = 0; a < 3; ++a) h[a] = g.active(a) ? g.spacing(a) : 1e-3 * g.length[a];

    auto div_j = [&](const Vec3& x) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) {
            Vec3 xp = x, xm = x;
            xp[a] += h[a];
            xm[a] -= h[a];
            s += (j(xp, 0.0)[a] - j(xm, 0.0)[a]) / (2.0 * h[a]);
        }
        return s;
    };
    auto grad_div_j = [&](const Vec3& x) {
        Vec3 out{};
        for (int a = 0; a < 3; ++a) {
            Vec3 xp = x, xm = x;
            xp[a] += h[a];
            xm[a] -= h[a];
            out[a] = (div_j(xp) - div_j(xm)) / (2.0 * h[a]);
        }
        return out;
    };

    const double m = units.m_e, e = units.e, c = units.c;
    AmpereResult r{VectorField(g), VectorField(g), {}, ScalarField(g)};
    parallel_for(g.size(), [&](std::size_t i) {
        const Vec3 x = g.point(i);
        const Vec3 gd = grad_div_j(x);
        r.J.values[i] = (m * c / (8.0 * std::numbers::pi * e * sigma)) * gd;
        r.curl_b.values[i] = (m / (2.0 * e * sigma)) * gd;
        r.phi_ed.values[i] = m * c / (8.0 * std::numbers::pi * e) * div_j(x) / sigma;
    });
    r.residual = make_report(axpby(4.0 * std::numbers::pi / c, r.J, -1.0, r.curl_b), l2_norm(r.curl_b));
    return r;
}

} // namespace mw
