#pragma once

// Physical constants and the derived constants of the material-wave model.
//
// Everything internal is SI. Photon transversal fields use the Gaussian
// convention E0 = c * sqrt(4 pi rho0); that conversion lives only in
// gaussian_field_amplitude().
//
// Sources:
//   e, m_e, c : CODATA 2018 recommended values (e and c exact by SI definition)
//   hbar      : 1.054588e-34 J s, the older CODATA-consistent reference value
//               the model's Planck-constant estimate is compared against
//   h         : 2 pi hbar

#include <cmath>
#include <numbers>

#include "matterwave/errors.hpp"

namespace mw {

struct UnitSystem {
    double e;     // C
    double m_e;   // kg
    double c;     // m/s
    double h;     // J s
    double hbar;  // J s

    /// Charge density matching a mean mass density, sigma = (e/m) rho.
    [[nodiscard]] constexpr double sigma_bar(double rho_bar) const { return e / m_e * rho_bar; }
};

struct DerivedConstants {
    double beta_f;          // field constant, A m^2 kg^(1/2) in the model's units
    double hbar_estimate;   // J s
    double lambda_compton;  // m
};

inline constexpr double kReferenceHbar = 1.054588e-34;

[[nodiscard]] constexpr UnitSystem codata_units()
{
    return UnitSystem{
        .e = 1.602176634e-19,
        .m_e = 9.1093837015e-31,
        .c = 299792458.0,
        .h = 2.0 * std::numbers::pi * kReferenceHbar,
        .hbar = kReferenceHbar,
    };
}

/// beta_f = e hbar sqrt(2/m_e), hbar_estimate = e sqrt(m_e/2), lambda_C = h/(m_e c).
[[nodiscard]] inline DerivedConstants derive_constants(const UnitSystem& u)
{
    return DerivedConstants{
        .beta_f = u.e * u.hbar * std::sqrt(2.0 / u.m_e),
        .hbar_estimate = u.e * std::sqrt(u.m_e / 2.0),
        .lambda_compton = u.h / (u.m_e * u.c),
    };
}

/// Transversal photon field amplitude E0 = B0 = c sqrt(4 pi rho0) (Gaussian).
[[nodiscard]] inline double gaussian_field_amplitude(double rho0, const UnitSystem& u)
{
    detail::require(rho0 >= 0.0, "gaussian_field_amplitude: rho0 must be >= 0");
    return u.c * std::sqrt(4.0 * std::numbers::pi * rho0);
}

} // namespace mw
