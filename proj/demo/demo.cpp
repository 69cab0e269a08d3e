// Walks through an electron material wave: dispersion, residuals on a
// refinement ladder, Maxwell-form fields, a moving frame and the Compton
// shift.

#include <cstdio>

#include "matterwave/electrodynamics.hpp"
#include "matterwave/interactions.hpp"
#include "matterwave/relativity.hpp"
#include "matterwave/residuals.hpp"
#include "matterwave/wave.hpp"

int main()
{
    const auto units = mw::codata_units();
    const auto electron = mw::make_wave(units.m_e, {1.0e6, 0.0, 0.0}, units);

    std::printf("electron at 1e6 m/s\n");
    std::printf("  wavelength      %.6e m\n", electron.wavelength());
    std::printf("  omega / |k|     %.6e m/s\n", electron.phase_velocity());
    const auto e = mw::energy_split(electron);
    std::printf("  W_K, W_P, W_T   %.6e %.6e %.6e J\n", e.w_kinetic, e.w_potential, e.w_total);

    const auto study = mw::convergence_study(mw::kDefaultLadder, [&](std::size_t n) {
        return mw::wave_residual(electron, mw::WaveField::density, mw::commensurate_grid(electron, n), 0.0);
    });
    std::printf("\nwave-equation residual of the density\n");
    for (std::size_t i = 0; i < study.n_ladder.size(); ++i)
        std::printf("  n = %4zu  relative %.3e\n", study.n_ladder[i], study.relative_ladder[i]);
    std::printf("  observed order %.3f\n", study.order_estimate);

    const auto mx = mw::maxwell_residuals(electron, mw::commensurate_grid(electron, 256), 0.0, units);
    std::printf("\nMaxwell-form residuals at n = 256\n");
    std::printf("  Faraday %.3e  Ampere %.3e  div B %.3e\n", mx.faraday.relative, mx.ampere_vacuum.relative,
                mx.div_b.relative);

    const auto frame = mw::make_frame(0.866);
    const auto q = mw::transform_wave_quantities(electron, frame);
    std::printf("\nframe at beta = 0.866 (gamma %.6f)\n", frame.gamma);
    std::printf("  phi0 ratio %.6f  volume ratio %.6f  energy ratio %.6f\n", q.phi0_ratio(), q.volume_ratio(),
                q.energy_ratio());

    std::printf("\nCompton shift for a 0.1 nm photon\n");
    for (double deg : {0.0, 45.0, 90.0, 180.0}) {
        const auto c = mw::compton_shift(1.0e-10, deg * 3.14159265358979323846 / 180.0, units);
        std::printf("  theta %5.1f deg  delta lambda %.6e m\n", deg, c.delta_lambda);
    }
    return 0;
}
