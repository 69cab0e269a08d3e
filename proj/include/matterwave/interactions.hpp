#pragma once

// Electron-photon interaction energetics, polarization shifts, spin
// assignment, the Compton shift as a Doppler cascade, and a Monte-Carlo
// sampler for spin measurements on oscillating fields.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "matterwave/errors.hpp"
#include "matterwave/units.hpp"
#include "matterwave/vec3.hpp"

namespace mw {

struct InteractionState {
    double rho_el0 = 0.0;    // kg/m^3
    double xdot = 0.0;       // m/s
    double phi_ext = 0.0;    // external potential
    double sigma_el0 = 0.0;  // C/m^3
};

struct InteractionEnergies {
    double h;          // sigma phi
    double h0;         // rho xdot^2 + sigma phi
    double h_w;        // h - h0 = -rho xdot^2
    double rho_ph_c2;  // emitted photon energy density, rho xdot^2
};

[[nodiscard]] inline InteractionEnergies interaction_hamiltonian(const InteractionState& s)
{
    detail::require(s.rho_el0 >= 0.0, "interaction_hamiltonian: density must be >= 0");
    const double kinetic = s.rho_el0 * s.xdot * s.xdot;
    const double pot = s.sigma_el0 * s.phi_ext;
    const double h0 = kinetic + pot;
    return InteractionEnergies{.h = pot, .h0 = h0, .h_w = pot - h0, .rho_ph_c2 = kinetic};
}

/// Photon energy density from the Lagrangian variation, V - rho xdot^2
/// with V = sigma phi.
[[nodiscard]] inline double lagrangian_photon_density(const InteractionState& s)
{
    return s.sigma_el0 * s.phi_ext - s.rho_el0 * s.xdot * s.xdot;
}

/// rho dxdot/dt = -(sigma/2) grad phi = -sigma_bar grad phi.
[[nodiscard]] inline Vec3 acceleration_no_photon(const InteractionState& s, const Vec3& grad_phi)
{
    detail::require(s.rho_el0 > 0.0, "acceleration_no_photon: density must be > 0");
    const double sigma_bar = 0.5 * s.sigma_el0;
    return (-sigma_bar / s.rho_el0) * grad_phi;
}

struct PolarizationShift {
    double k_sq;            // k_el^2 + k_ph^2 + 2 |k_el||k_ph| cos(theta)
    double baseline_k_sq;   // k_el^2 + k_ph^2
    double relative_shift;  // (k_sq - baseline) / baseline
};

[[nodiscard]] inline PolarizationShift polarization_shift(double k_el, double k_ph, double theta)
{
    detail::require(k_el >= 0.0 && k_ph >= 0.0, "polarization_shift: magnitudes must be >= 0");
    const double base = k_el * k_el + k_ph * k_ph;
    const double k2 = base + 2.0 * k_el * k_ph * std::cos(theta);
    return PolarizationShift{k2, base, base == 0.0 ? 0.0 : (k2 - base) / base};
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
[[nodiscard]] inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct PolarizationAverage {
    double mean_abs_shift;   // mean |Delta W|, units of baseline_energy
    double expected;         // (2/pi) baseline_energy
    double mean_k_sq;        // mean combined k^2
    std::uint64_t samples;
};

/// Mean |Delta W| for equal wavenumbers and a uniform polarization angle in
/// [0, pi]. Delta W / W0 = (k^2 - 2 k_i^2) / (2 k_i^2) = cos(theta).
[[nodiscard]] inline PolarizationAverage polarization_average(std::uint64_t samples, std::uint64_t seed, double k,
                                                              double baseline_energy)
{
    detail::require(samples > 0, "polarization_average: samples must be > 0");
    std::mt19937_64 rng(seed);
    double sum_abs = 0.0, sum_k2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto s = polarization_shift(k, k, std::numbers::pi * uniform01(rng));
        sum_abs += std::abs(s.relative_shift);
        sum_k2 += s.k_sq;
    }
    const double n = static_cast<double>(samples);
    return PolarizationAverage{baseline_energy * sum_abs / n, 2.0 / std::numbers::pi * baseline_energy, sum_k2 / n,
                               samples};
}

enum class ParticleKind { boson, fermion };

[[nodiscard]] inline ParticleKind parse_particle_kind(const std::string& s)
{
    if (s == "boson" || s == "photon") return ParticleKind::boson;
    if (s == "fermion" || s == "electron") return ParticleKind::fermion;
    throw ConfigError("unknown particle kind '" + s + "'");
}

[[nodiscard]] inline std::string to_string(ParticleKind k) { return k == ParticleKind::boson ? "boson" : "fermion"; }

struct SpinAssignment {
    ParticleKind kind;
    double s;             // J s
    double g;             // gyromagnetic ratio
    Vec3 axis;            // parallel to the magnetic field
    double energy;        // g (e/2m) B s, J
    double expected;      // hbar omega (boson) or hbar omega / 2 (fermion)
    double energy_ratio;  // energy / expected
};

/// Spin and gyromagnetic ratio that make W = mu.B reproduce the particle
/// energy. Bosons see their intrinsic field B = 2 (rho/sigma_bar) omega and
/// carry hbar omega; fermions see the external field (rho/sigma_bar) omega
/// and carry hbar omega / 2. With rho/sigma_bar = m/e both need g s = hbar.
[[nodiscard]] inline SpinAssignment spin_assign(ParticleKind kind, const Vec3& b_axis, double omega = 1e15,
                                                const UnitSystem& units = codata_units())
{
    detail::require(norm(b_axis) > 0.0, "spin_assign: field axis must be nonzero");
    detail::require(omega > 0.0, "spin_assign: omega must be > 0");
    const bool boson = kind == ParticleKind::boson;
    const double s = boson ? units.hbar : 0.5 * units.hbar;
    const double g = boson ? 1.0 : 2.0;
    const double m = units.m_e;
    const double rho_over_sigma = m / units.e;
    const double b = (boson ? 2.0 : 1.0) * rho_over_sigma * omega;
    const double energy = g * units.e / (2.0 * m) * b * s;
    const double expected = (boson ? 1.0 : 0.5) * units.hbar * omega;
    return SpinAssignment{kind, s, g, normalized(b_axis), energy, expected, energy / expected};
}

struct ComptonShift {
    double omega;                  // source angular frequency, rad/s
    double u_el0;                  // sqrt(hbar omega / m), m/s
    double beta_el;                // u_el0 / c
    double nu_prime_first_order;   // nu (1 - beta)
    double nu_prime_exact;         // nu sqrt((1 - beta)/(1 + beta))
    double doppler_first_order;    // lambda_s beta, wavelength shift of the first-order Doppler step
    double doppler_exact;          // lambda_s (sqrt((1 + beta)/(1 - beta)) - 1)
    double lambda_compton;         // h / (m c)
    bool chain_closes;             // doppler_first_order == lambda_compton to 1e-6
    double delta_lambda;           // lambda_C (1 - cos theta)
    double lambda_prime;           // lambda_s + delta_lambda
};

/// Compton shift from longitudinal recoil: the absorbing electron moves at
/// u = sqrt(hbar omega / m), the secondary absorption sees a Doppler-shifted
/// source, and the observed shift is lambda_C (1 - cos theta).
[[nodiscard]] inline ComptonShift compton_shift(double lambda_s, double theta, const UnitSystem& units = codata_units())
{
    detail::require(lambda_s > 0.0, "compton_shift: lambda_s must be > 0");
    const double c = units.c;
    const double nu = c / lambda_s;
    const double omega = 2.0 * std::numbers::pi * nu;
    const double u = std::sqrt(units.hbar * omega / units.m_e);
    const double beta = u / c;
    const double lc = units.h / (units.m_e * c);
    const double first = lambda_s * beta;
    const double dl = lc * (1.0 - std::cos(theta));
    return ComptonShift{
        .omega = omega,
        .u_el0 = u,
        .beta_el = beta,
        .nu_prime_first_order = nu * (1.0 - beta),
        .nu_prime_exact = nu * std::sqrt((1.0 - beta) / (1.0 + beta)),
        .doppler_first_order = first,
        .doppler_exact = lambda_s * (std::sqrt((1.0 + beta) / (1.0 - beta)) - 1.0),
        .lambda_compton = lc,
        .chain_closes = std::abs(first - lc) <= 1e-6 * lc,
        .delta_lambda = dl,
        .lambda_prime = lambda_s + dl,
    };
}

struct EPRSampler {
    double lambda = 1.0;     // m
    double omega = 1.0;      // rad/s
    std::uint64_t rng_seed = 0;
};

struct EPRResult {
    double corr;             // mean product over definite pairs, NaN if none
    double corr_ungated;     // mean product over all pairs
    double valid_fraction;   // fraction of pairs with both measurements definite
    std::uint64_t n;
};

namespace detail {

/// Mean of sign(cos(phi)) over [a - w/2, a + w/2]; the antiderivative of
/// sign(cos) is asin(sin).
inline double windowed_sign(double a, double w)
{
    if (w == 0.0) {
        const double c = std::cos(a);
        return c > 0.0 ? 1.0 : (c < 0.0 ? -1.0 : 0.0);
    }
    return (std::asin(std::sin(a + 0.5 * w)) - std::asin(std::sin(a - 0.5 * w))) / w;
}

} // namespace detail

/// Pairs with anticorrelated oscillating spin sign s1 = -s2 = sign(cos(phase)),
/// a uniform random phase per pair, and detectors that average the sign over
/// their spatial window. A measurement is definite when its window is below
/// lambda/2.
[[nodiscard]] inline EPRResult epr_sample(const EPRSampler& s, std::uint64_t n, double window1, double window2)
{
    detail::require(n >= 1, "epr_sample: n must be >= 1");
    detail::require(s.lambda > 0.0, "epr_sample: lambda must be > 0");
    detail::require(window1 >= 0.0 && window2 >= 0.0, "epr_sample: windows must be >= 0");
    std::mt19937_64 rng(s.rng_seed);
    const double k = 2.0 * std::numbers::pi / s.lambda;
    const double w1 = k * window1, w2 = k * window2;
    const bool definite = window1 < 0.5 * s.lambda && window2 < 0.5 * s.lambda;

    double sum = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double phase = 2.0 * std::numbers::pi * uniform01(rng);
        const double a1 = detail::windowed_sign(phase, w1);
        const double a2 = -detail::windowed_sign(phase, w2);
        sum += a1 * a2;
    }
    const double ungated = sum / static_cast<double>(n);
    return EPRResult{
        .corr = definite ? ungated : std::numeric_limits<double>::quiet_NaN(),
        .corr_ungated = ungated,
        .valid_fraction = definite ? 1.0 : 0.0,
        .n = n,
    };
}

} // namespace mw
