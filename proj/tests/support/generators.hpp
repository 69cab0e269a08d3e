#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "matterwave/units.hpp"
#include "matterwave/vec3.hpp"
#include "matterwave/wave.hpp"

using mw::operator+;
using mw::operator-;
using mw::operator*;
using mw::operator/;

namespace mwtest {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    mw::Vec3 unit_vector()
    {
        const double cz = uniform(-1.0, 1.0), az = uniform(0.0, 2.0 * std::numbers::pi);
        const double sz = std::sqrt(1.0 - cz * cz);
        return {sz * std::cos(az), sz * std::sin(az), cz};
    }

    mw::Vec3 vector(double scale) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }

    /// Particle wave with mass in [1e-31, 1e-25] kg and speed in [1e2, 1e8] m/s.
    mw::PlaneMaterialWave wave()
    {
        return mw::make_wave(log_uniform(1e-31, 1e-25), log_uniform(1e2, 1e8) * unit_vector());
    }

    /// Wave moving along x, so grids stay one-dimensional.
    mw::PlaneMaterialWave wave_x()
    {
        return mw::make_wave(log_uniform(1e-31, 1e-25), mw::Vec3{log_uniform(1e2, 1e8), 0.0, 0.0});
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace mwtest
