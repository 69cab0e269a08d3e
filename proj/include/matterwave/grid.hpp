#pragma once

// Uniform periodic grids and sampled fields.
//
// A grid has up to three axes. An axis with a single point is collapsed:
// fields are treated as constant along it and every derivative in that
// direction is zero. Active axes need at least 8 points.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <vector>

#include "matterwave/errors.hpp"
#include "matterwave/parallel.hpp"
#include "matterwave/vec3.hpp"
#include "matterwave/wave.hpp"

namespace mw {

struct Grid {
    std::array<std::size_t, 3> n{1, 1, 1};
    Vec3 length{1.0, 1.0, 1.0};

    [[nodiscard]] bool active(int axis) const { return n[axis] > 1; }
    [[nodiscard]] double spacing(int axis) const { return length[axis] / static_cast<double>(n[axis]); }
    [[nodiscard]] std::size_t size() const { return n[0] * n[1] * n[2]; }

    [[nodiscard]] double cell_volume() const
    {
        double v = 1.0;
        for (int a = 0; a < 3; ++a)
            if (active(a)) v *= spacing(a);
        return v;
    }

    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (k * n[1] + j) * n[0] + i; }

    [[nodiscard]] std::array<std::size_t, 3> coords(std::size_t idx) const
    {
        return {idx % n[0], (idx / n[0]) % n[1], idx / (n[0] * n[1])};
    }

    [[nodiscard]] Vec3 point(std::size_t idx) const
    {
        const auto c = coords(idx);
        Vec3 x{};
        for (int a = 0; a < 3; ++a) x[a] = active(a) ? static_cast<double>(c[a]) * spacing(a) : 0.0;
        return x;
    }

    /// Periodic neighbour `offset` cells away along `axis`.
    [[nodiscard]] std::size_t shifted(std::size_t idx, int axis, long offset) const
    {
        auto c = coords(idx);
        const long m = static_cast<long>(n[axis]);
        c[axis] = static_cast<std::size_t>(((static_cast<long>(c[axis]) + offset) % m + m) % m);
        return index(c[0], c[1], c[2]);
    }
};

[[nodiscard]] inline Grid make_grid(std::array<std::size_t, 3> n, const Vec3& length)
{
    for (int a = 0; a < 3; ++a) {
        detail::require_config(n[a] == 1 || n[a] >= 8, "grid: active axes need at least 8 points");
        detail::require_config(length[a] > 0.0, "grid: lengths must be positive");
    }
    return Grid{n, length};
}

/// One-dimensional grid along x.
[[nodiscard]] inline Grid make_grid_1d(std::size_t n, double length) { return make_grid({n, 1, 1}, {length, 1.0, 1.0}); }

template <class T>
struct Field {
    Grid grid;
    std::vector<T> values;
    double time = 0.0;

    explicit Field(const Grid& g, double t = 0.0) : grid(g), values(g.size(), T{}), time(t) {}
};

using ScalarField = Field<double>;
using VectorField = Field<Vec3>;

namespace detail {
inline bool negligible(double ki, double k) { return std::abs(ki) <= 1e-12 * k; }
} // namespace detail

/// Grid holding an integer number of wavelengths along every axis the wave
/// varies on. Axes with no wave-vector component are collapsed. The wave
/// count per axis is rounded to the nearest integer, and never below 1.
[[nodiscard]] inline Grid commensurate_grid(const PlaneMaterialWave& w, std::size_t n, const Vec3& waves = {1, 1, 1})
{
    const double k = w.wavenumber();
    std::array<std::size_t, 3> counts{1, 1, 1};
    Vec3 length{1.0, 1.0, 1.0};
    for (int a = 0; a < 3; ++a) {
        const double ka = w.wave_vector[a];
        if (detail::negligible(ka, k)) continue;
        const double count = std::max(1.0, std::round(waves[a]));
        counts[a] = n;
        length[a] = count * 2.0 * std::numbers::pi / std::abs(ka);
    }
    return make_grid(counts, length);
}

/// Throws ConfigError unless the wave is periodic on the grid.
inline void check_commensurate(const Grid& g, const Vec3& wave_vector)
{
    const double k = norm(wave_vector);
    for (int a = 0; a < 3; ++a) {
        const double ka = wave_vector[a];
        if (!g.active(a)) {
            if (!detail::negligible(ka, k)) {
                std::ostringstream os;
                os << "sample: wave varies along collapsed axis " << a;
                throw ConfigError(os.str());
            }
            continue;
        }
        const double cycles = ka * g.length[a] / (2.0 * std::numbers::pi);
        if (std::abs(cycles - std::round(cycles)) > 1e-9 * std::max(1.0, std::abs(cycles))) {
            std::ostringstream os;
            os << "sample: grid axis " << a << " holds " << cycles << " wavelengths, not an integer";
            throw ConfigError(os.str());
        }
    }
}

enum class FieldKind { density, momentum, potential };

template <class Fn>
[[nodiscard]] ScalarField sample_scalar(const Grid& g, double t, Fn&& fn)
{
    ScalarField f(g, t);
    parallel_for(g.size(), [&](std::size_t i) { f.values[i] = fn(g.point(i)); });
    return f;
}

template <class Fn>
[[nodiscard]] VectorField sample_vector(const Grid& g, double t, Fn&& fn)
{
    VectorField f(g, t);
    parallel_for(g.size(), [&](std::size_t i) { f.values[i] = fn(g.point(i)); });
    return f;
}

/// Exact samples of the density or intrinsic potential, or of their n-th
/// time derivative.
[[nodiscard]] inline ScalarField sample(const PlaneMaterialWave& w, FieldKind kind, const Grid& g, double t,
                                        int time_derivative = 0)
{
    check_commensurate(g, w.wave_vector);
    switch (kind) {
        case FieldKind::density:
            return sample_scalar(g, t, [&](const Vec3& x) { return density_time_derivative(w, x, t, time_derivative); });
        case FieldKind::potential:
            return sample_scalar(g, t, [&](const Vec3& x) { return potential_time_derivative(w, x, t, time_derivative); });
        case FieldKind::momentum: break;
    }
    throw ConfigError("sample: momentum is a vector field, use sample_momentum");
}

/// Exact samples of p = rho u (or of its n-th time derivative).
[[nodiscard]] inline VectorField sample_momentum(const PlaneMaterialWave& w, const Grid& g, double t,
                                                 int time_derivative = 0)
{
    check_commensurate(g, w.wave_vector);
    return sample_vector(g, t, [&](const Vec3& x) { return momentum_time_derivative(w, x, t, time_derivative); });
}

} // namespace mw
