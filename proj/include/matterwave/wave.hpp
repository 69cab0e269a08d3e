#pragma once

// Plane material waves: a real-valued mass-density wave
//   rho(x, t) = rho0 sin^2(k.x - omega t + offset)
// with a complementary intrinsic potential
//   phi(x, t) = phi0 - rho(x, t) |u|^2,  phi0 = rho0 |u|^2,
// so kinetic and potential energy densities always sum to a constant.
//
// k = m u / hbar and omega = m |u|^2 / hbar, which makes the phase velocity
// omega/|k| equal to the mechanical velocity |u|.

#include <cmath>
#include <numbers>
#include <string>

#include "matterwave/errors.hpp"
#include "matterwave/units.hpp"
#include "matterwave/vec3.hpp"

namespace mw {

enum class WaveKind { particle, photon };

[[nodiscard]] inline std::string to_string(WaveKind k) { return k == WaveKind::photon ? "photon" : "particle"; }

[[nodiscard]] inline WaveKind parse_wave_kind(const std::string& s)
{
    if (s == "particle") return WaveKind::particle;
    if (s == "photon") return WaveKind::photon;
    throw ConfigError("unknown wave kind '" + s + "'");
}

struct PlaneMaterialWave {
    WaveKind kind = WaveKind::particle;
    double mass = 0.0;        // kg, integral particle mass
    Vec3 velocity{};          // m/s
    Vec3 wave_vector{};       // 1/m
    double omega = 0.0;       // rad/s
    double rho0 = 0.0;        // kg/m^3, peak density
    double psi0 = 0.0;        // sqrt(kg/m^3); reporting only, C = 1
    double volume = 0.0;      // m^3
    double phase_offset = 0.0;

    [[nodiscard]] double speed() const { return norm(velocity); }
    [[nodiscard]] double wavenumber() const { return norm(wave_vector); }
    [[nodiscard]] double wavelength() const { return 2.0 * std::numbers::pi / wavenumber(); }
    [[nodiscard]] double frequency() const { return omega / (2.0 * std::numbers::pi); }
    [[nodiscard]] double phase_velocity() const { return omega / wavenumber(); }
    [[nodiscard]] double mean_density() const { return 0.5 * rho0; }
    [[nodiscard]] double phi0() const { return rho0 * dot(velocity, velocity); }

    [[nodiscard]] double phase(const Vec3& x, double t) const { return dot(wave_vector, x) - omega * t + phase_offset; }
};

namespace detail {

inline PlaneMaterialWave build_wave(WaveKind kind, double m, const Vec3& u, double volume, const UnitSystem& units)
{
    PlaneMaterialWave w;
    w.kind = kind;
    w.mass = m;
    w.velocity = u;
    w.wave_vector = (m / units.hbar) * u;
    w.omega = m * dot(u, u) / units.hbar;
    w.volume = volume;
    w.rho0 = 2.0 * m / volume;
    w.psi0 = std::sqrt(w.rho0);
    return w;
}

} // namespace detail

/// Particle wave with an explicit particle volume.
[[nodiscard]] inline PlaneMaterialWave make_wave(double m, const Vec3& u, double volume,
                                                 const UnitSystem& units = codata_units())
{
    detail::require(m > 0.0, "make_wave: mass must be > 0");
    detail::require(norm(u) > 0.0, "make_wave: velocity must be nonzero");
    detail::require(volume > 0.0, "make_wave: volume must be > 0");
    return detail::build_wave(WaveKind::particle, m, u, volume, units);
}

/// Particle wave whose volume is one wavelength times a unit cross-section.
[[nodiscard]] inline PlaneMaterialWave make_wave(double m, const Vec3& u, const UnitSystem& units = codata_units())
{
    detail::require(m > 0.0, "make_wave: mass must be > 0");
    detail::require(norm(u) > 0.0, "make_wave: velocity must be nonzero");
    const double lambda = units.h / (m * norm(u));
    return make_wave(m, u, lambda * 1.0, units);
}

/// Photon of frequency nu travelling along `direction`: |u| = c, m = h nu / c^2.
[[nodiscard]] inline PlaneMaterialWave make_photon_wave(double nu, const Vec3& direction, double volume = 0.0,
                                                        const UnitSystem& units = codata_units())
{
    detail::require(nu > 0.0, "make_photon_wave: nu must be > 0");
    detail::require(norm(direction) > 0.0, "make_photon_wave: direction must be nonzero");
    const double m = units.h * nu / (units.c * units.c);
    const Vec3 u = units.c * normalized(direction);
    if (volume <= 0.0) volume = units.c / nu;
    return detail::build_wave(WaveKind::photon, m, u, volume, units);
}

/// Copy of `w` with a different angular frequency. Breaks the dispersion
/// relation on purpose; used for negative controls.
[[nodiscard]] inline PlaneMaterialWave detuned(PlaneMaterialWave w, double omega)
{
    w.omega = omega;
    return w;
}

[[nodiscard]] inline PlaneMaterialWave with_rho0(PlaneMaterialWave w, double rho0)
{
    detail::require(rho0 >= 0.0, "with_rho0: rho0 must be >= 0");
    w.rho0 = rho0;
    w.psi0 = std::sqrt(rho0);
    return w;
}

[[nodiscard]] inline double density_at(const PlaneMaterialWave& w, const Vec3& x, double t)
{
    const double s = std::sin(w.phase(x, t));
    return w.rho0 * s * s;
}

[[nodiscard]] inline double intrinsic_potential_at(const PlaneMaterialWave& w, const Vec3& x, double t)
{
    const double c = std::cos(w.phase(x, t));
    return w.phi0() * c * c;
}

[[nodiscard]] inline Vec3 momentum_at(const PlaneMaterialWave& w, const Vec3& x, double t)
{
    return density_at(w, x, t) * w.velocity;
}

/// n-th time derivative of the density, n in {0, 1, 2, 3}.
///   rho = rho0 (1 - cos 2theta)/2,  d/dt theta = -omega
[[nodiscard]] inline double density_time_derivative(const PlaneMaterialWave& w, const Vec3& x, double t, int n)
{
    const double th2 = 2.0 * w.phase(x, t);
    const double a = 2.0 * w.omega;
    switch (n) {
        case 0: return density_at(w, x, t);
        case 1: return -0.5 * w.rho0 * a * std::sin(th2);
        case 2: return 0.5 * w.rho0 * a * a * std::cos(th2);
        case 3: return 0.5 * w.rho0 * a * a * a * std::sin(th2);
        default: throw DomainError("density_time_derivative: order must be 0..3");
    }
}

/// n-th time derivative of the intrinsic potential (phi = phi0 - rho |u|^2).
[[nodiscard]] inline double potential_time_derivative(const PlaneMaterialWave& w, const Vec3& x, double t, int n)
{
    if (n == 0) return intrinsic_potential_at(w, x, t);
    return -dot(w.velocity, w.velocity) * density_time_derivative(w, x, t, n);
}

[[nodiscard]] inline Vec3 momentum_time_derivative(const PlaneMaterialWave& w, const Vec3& x, double t, int n)
{
    return density_time_derivative(w, x, t, n) * w.velocity;
}

struct EnergySplit {
    double w_kinetic;    // J
    double w_potential;  // J
    double w_total;      // J
    double volume;       // m^3
};

/// Kinetic and intrinsic-potential energies are each (m/2)|u|^2; the total
/// m|u|^2 is what hbar*omega accounts for.
[[nodiscard]] inline EnergySplit energy_split(const PlaneMaterialWave& w)
{
    const double u2 = dot(w.velocity, w.velocity);
    const double half = 0.5 * w.mass * u2;
    return EnergySplit{.w_kinetic = half, .w_potential = half, .w_total = half + half, .volume = w.volume};
}

} // namespace mw
