#pragma once

// Photons as plane material waves at |u| = c with a complementary
// electromagnetic potential:
//   phi_k = rho0 c^2 sin^2(theta),  phi_e = rho0 c^2 cos^2(theta),
// transversal Gaussian-unit fields carrying phi_e, energy-transfer rates,
// the charge-quantum chain and the paired-photon structural balance.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "matterwave/electrodynamics.hpp"
#include "matterwave/grid.hpp"
#include "matterwave/operators.hpp"
#include "matterwave/residuals.hpp"
#include "matterwave/units.hpp"
#include "matterwave/wave.hpp"

namespace mw {

struct PhotonMode {
    double rho0 = 0.0;     // kg/m^3
    Vec3 wave_vector{};    // 1/m
    Vec3 e_t{};            // unit transversal polarization
    double volume = 0.0;   // m^3
    double c = codata_units().c;
    /// +1 for sin^2(k.x - w t); -1 for the reversed-momentum form
    /// sin^2(-k.x - w t), which propagates against its momentum.
    int direction = +1;

    [[nodiscard]] double wavenumber() const { return norm(wave_vector); }
    [[nodiscard]] double omega() const { return c * wavenumber(); }
    [[nodiscard]] Vec3 e_k() const { return normalized(wave_vector); }
    [[nodiscard]] double phase(const Vec3& x, double t) const
    {
        return static_cast<double>(direction) * dot(wave_vector, x) - omega() * t;
    }
};

/// Photon of frequency nu along `dir` polarized along `e_t` (must be
/// perpendicular to `dir`).
[[nodiscard]] inline PhotonMode make_photon_mode(double nu, const Vec3& dir, const Vec3& e_t, double rho0,
                                                 double volume = 1.0, const UnitSystem& units = codata_units())
{
    detail::require(nu > 0.0, "make_photon_mode: nu must be > 0");
    detail::require(rho0 >= 0.0, "make_photon_mode: rho0 must be >= 0");
    detail::require(norm(dir) > 0.0 && norm(e_t) > 0.0, "make_photon_mode: zero direction");
    const Vec3 ek = normalized(dir);
    const Vec3 et = normalized(e_t);
    detail::require(std::abs(dot(ek, et)) < 1e-12, "make_photon_mode: e_t must be perpendicular to k");
    PhotonMode m;
    m.rho0 = rho0;
    m.wave_vector = (2.0 * std::numbers::pi * nu / units.c) * ek;
    m.e_t = et;
    m.volume = volume;
    m.c = units.c;
    return m;
}

/// Photon mode whose wave vector is given directly (for grid-commensurate
/// setups).
[[nodiscard]] inline PhotonMode make_photon_mode_k(const Vec3& k, const Vec3& e_t, double rho0, double volume = 1.0,
                                                   const UnitSystem& units = codata_units())
{
    detail::require(norm(k) > 0.0, "make_photon_mode_k: k must be nonzero");
    return make_photon_mode(units.c * norm(k) / (2.0 * std::numbers::pi), k, e_t, rho0, volume, units);
}

struct PhotonPotentials {
    double phi_k;
    double phi_e;
    double phi_total;
};

[[nodiscard]] inline PhotonPotentials photon_potentials(const PhotonMode& m, const Vec3& x, double t)
{
    const double th = m.phase(x, t);
    const double scale = m.rho0 * m.c * m.c;
    const double s = std::sin(th), c = std::cos(th);
    return PhotonPotentials{scale * s * s, scale * c * c, scale};
}

/// Photon momentum density rho0 c e_k sin^2(theta).
[[nodiscard]] inline Vec3 photon_momentum_at(const PhotonMode& m, const Vec3& x, double t)
{
    const double s = std::sin(m.phase(x, t));
    return (m.rho0 * m.c * s * s) * m.e_k();
}

struct TransversalFields {
    Vec3 E;
    Vec3 B;
};

/// E = E0 cos(theta) e_t, B = E0 cos(theta) (e_k x e_t), E0 = c sqrt(4 pi rho0)
/// (Gaussian). (E^2 + B^2)/(8 pi) equals phi_e.
[[nodiscard]] inline TransversalFields transversal_fields(const PhotonMode& m, const Vec3& x, double t,
                                                          const UnitSystem& units = codata_units())
{
    const double amp = gaussian_field_amplitude(m.rho0, units) * std::cos(m.phase(x, t));
    return TransversalFields{amp * m.e_t, amp * cross(m.e_k(), m.e_t)};
}

[[nodiscard]] inline double gaussian_energy_density(const TransversalFields& f)
{
    return (dot(f.E, f.E) + dot(f.B, f.B)) / (8.0 * std::numbers::pi);
}

/// Sampled transversal fields with exact second time derivatives.
[[nodiscard]] inline EMFieldPair transversal_field_pair(const PhotonMode& m, const Grid& g, double t,
                                                        const UnitSystem& units = codata_units())
{
    check_commensurate(g, m.wave_vector);
    const double w2 = m.omega() * m.omega();
    EMFieldPair p{VectorField(g, t), VectorField(g, t), VectorField(g, t), VectorField(g, t)};
    parallel_for(g.size(), [&](std::size_t i) {
        const auto f = transversal_fields(m, g.point(i), t, units);
        p.E.values[i] = f.E;
        p.B.values[i] = f.B;
        p.d2E.values[i] = -w2 * f.E;
        p.d2B.values[i] = -w2 * f.B;
    });
    p.convention = FieldConvention::intrinsic;
    return p;
}

/// Gaussian Faraday law for the transversal fields: curl E + (1/c) dB/dt,
/// discrete curl, exact dB/dt. Scale is |k| ||E||.
[[nodiscard]] inline ResidualReport transversal_faraday_residual(const PhotonMode& m, const Grid& g, double t,
                                                                 const UnitSystem& units = codata_units(),
                                                                 StencilOrder order = StencilOrder::second)
{
    check_commensurate(g, m.wave_vector);
    VectorField e(g, t), db(g, t);
    const double amp = gaussian_field_amplitude(m.rho0, units);
    const Vec3 bdir = cross(m.e_k(), m.e_t);
    parallel_for(g.size(), [&](std::size_t i) {
        const Vec3 x = g.point(i);
        const double th = m.phase(x, t);
        e.values[i] = (amp * std::cos(th)) * m.e_t;
        // d/dt cos(theta) = omega sin(theta)
        db.values[i] = (amp * m.omega() * std::sin(th)) * bdir;
    });
    return make_report(axpby(1.0, curl(e, order), 1.0 / m.c, db), m.wavenumber() * l2_norm(e));
}

/// Packet of photon modes with momentum and potential amplitudes. Each mode
/// must satisfy p0 k + (alpha omega / c) phi0 = 0 with alpha = -1/c.
class PhotonPacket {
public:
    struct Component {
        PhotonMode mode;
        double p0;
        double phi0;
    };

    /// Adds a mode with the amplitudes p0 = rho0 c and phi0 = rho0 c^2.
    void add(const PhotonMode& m) { add(m, m.rho0 * m.c, m.rho0 * m.c * m.c); }

    /// Adds a mode with explicit amplitudes; throws DomainError when the
    /// amplitude constraint does not hold to 1e-12 relative.
    void add(const PhotonMode& m, double p0, double phi0)
    {
        const double r = admissibility_residual(m, p0, phi0);
        if (!(r <= 1e-12)) throw DomainError("PhotonPacket: amplitudes violate p0 k - omega phi0 / c^2 = 0");
        components_.push_back({m, p0, phi0});
    }

    [[nodiscard]] static double admissibility_residual(const PhotonMode& m, double p0, double phi0)
    {
        const double alpha = -1.0 / m.c;
        const double a = p0 * m.wavenumber();
        const double b = alpha * m.omega() / m.c * phi0;
        const double s = std::max(std::abs(a), std::abs(b));
        return s == 0.0 ? 0.0 : std::abs(a + b) / s;
    }

    [[nodiscard]] std::span<const Component> components() const { return components_; }

    [[nodiscard]] double potential_at(const Vec3& x, double t) const
    {
        double s = 0.0;
        for (const auto& c : components_) {
            const double co = std::cos(c.mode.phase(x, t));
            s += c.phi0 * co * co;
        }
        return s;
    }

    [[nodiscard]] Vec3 momentum_at(const Vec3& x, double t) const
    {
        Vec3 s{};
        for (const auto& c : components_) {
            const double si = std::sin(c.mode.phase(x, t));
            s = s + (c.p0 * si * si) * c.mode.e_k();
        }
        return s;
    }

private:
    std::vector<Component> components_;
};

struct TransferEvent {
    double nu = 0.0;               // Hz
    double volume_fraction = 1.0;  // (0, 1]
    std::optional<double> duration{};  // s, one period 1/nu when unset
};

struct TransferResult {
    double rate;      // J/s
    double energy;    // J
    double duration;  // s
};

/// Energy-transfer rate h nu^2 (times the interacting volume fraction) and
/// the energy moved over the interaction interval.
[[nodiscard]] inline TransferResult transfer_rate(const TransferEvent& ev, const UnitSystem& units = codata_units())
{
    detail::require(ev.nu > 0.0, "transfer_rate: nu must be > 0");
    detail::require(ev.volume_fraction > 0.0 && ev.volume_fraction <= 1.0,
                    "transfer_rate: volume fraction must be in (0, 1]");
    const double tau = 1.0 / ev.nu;
    const double dur = ev.duration.value_or(tau);
    detail::require(dur >= 0.0, "transfer_rate: duration must be >= 0");
    const double rate = units.h * ev.nu * ev.nu * ev.volume_fraction;
    return TransferResult{rate, rate * dur, dur};
}

struct ChargeQuantum {
    double beta_f;            // field constant, numeric value in the model's units
    double e_estimate;        // sqrt(beta_f)
    double a_l_flow;          // (4 pi / 3) beta_f / e_estimate over unit time
    double chain_residual;    // |(t1 - t0) A_L - (4 pi / 3) e_estimate|
    double relative_to_e;     // (e_estimate - e) / e
    bool dimensionally_closed;  // false: the chain holds per unit volume and unit time only
};

/// Flow of the longitudinal field A_L through a unit sphere in unit time:
/// (4 pi / 3) e = (t1 - t0) A_L with A_L = (4 pi / 3) beta_f / e, hence
/// beta_f = e^2.
[[nodiscard]] inline ChargeQuantum charge_quantum(const UnitSystem& units = codata_units())
{
    const double beta = derive_constants(units).beta_f;
    const double e_est = std::sqrt(beta);
    const double dt = 1.0;
    const double a_l = 4.0 * std::numbers::pi / 3.0 * beta / e_est;
    return ChargeQuantum{
        .beta_f = beta,
        .e_estimate = e_est,
        .a_l_flow = dt * a_l,
        .chain_residual = std::abs(dt * a_l - 4.0 * std::numbers::pi / 3.0 * e_est),
        .relative_to_e = (e_est - units.e) / units.e,
        .dimensionally_closed = false,
    };
}

/// Electromagnetic potential of one interaction photon, with a sign and a
/// time shift: sign * phi_e(x, t + shift).
struct InteractionPotential {
    PhotonMode mode;
    double sign = 1.0;
    double time_shift = 0.0;

    [[nodiscard]] double value(const Vec3& x, double t) const
    {
        return sign * photon_potentials(mode, x, t + time_shift).phi_e;
    }

    /// d/dt of phi_e = rho0 c^2 cos^2(theta) is rho0 c^2 omega sin(2 theta).
    [[nodiscard]] double time_derivative(const Vec3& x, double t) const
    {
        const double th = mode.phase(x, t + time_shift);
        return sign * mode.rho0 * mode.c * mode.c * mode.omega() * std::sin(2.0 * th);
    }
};

struct StructuralBalance {
    double max_sum;  // max |phi1 + phi2| over the probes
    double max_dt;   // max |d/dt (phi1 + phi2)| over the probes
};

/// Balance of the two interaction-photon potentials over a set of probe
/// points and times. A paired construction gives zero for both.
[[nodiscard]] inline StructuralBalance structural_balance(const InteractionPotential& a, const InteractionPotential& b,
                                                          std::span<const Vec3> points, std::span<const double> times)
{
    StructuralBalance r{0.0, 0.0};
    for (const auto& x : points)
        for (double t : times) {
            r.max_sum = std::max(r.max_sum, std::abs(a.value(x, t) + b.value(x, t)));
            r.max_dt = std::max(r.max_dt, std::abs(a.time_derivative(x, t) + b.time_derivative(x, t)));
        }
    return r;
}

/// u^2 lap p - d2p/dt2 + c^2 lap p_ph for an electron wave driven by a photon
/// sampled on the same grid. Scale is u^2 ||lap p||.
[[nodiscard]] inline ResidualReport source_term(const PlaneMaterialWave& el, const PhotonMode& ph, const Grid& g,
                                                double t, StencilOrder order = StencilOrder::second)
{
    check_commensurate(g, el.wave_vector);
    check_commensurate(g, ph.wave_vector);
    const double u2 = dot(el.velocity, el.velocity);
    const auto lap_p = laplacian(sample_momentum(el, g, t), order);
    const auto d2p = sample_momentum(el, g, t, 2);
    const auto p_ph = sample_vector(g, t, [&](const Vec3& x) { return photon_momentum_at(ph, x, t); });
    const auto lap_ph = laplacian(p_ph, order);
    const auto lhs = axpby(u2, lap_p, -1.0, d2p);
    return make_report(axpby(1.0, lhs, ph.c * ph.c, lap_ph), u2 * l2_norm(lap_p));
}

} // namespace mw
