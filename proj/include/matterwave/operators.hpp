#pragma once

// Central-difference operators on periodic grids, 2nd or 4th order.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "matterwave/grid.hpp"
#include "matterwave/parallel.hpp"

namespace mw {

enum class StencilOrder { second = 2, fourth = 4 };

[[nodiscard]] constexpr double order_value(StencilOrder o) { return static_cast<double>(static_cast<int>(o)); }

namespace detail {

inline double first_difference(const Grid& g, std::span<const double> v, std::size_t i, int axis, StencilOrder order)
{
    if (!g.active(axis)) return 0.0;
    const double h = g.spacing(axis);
    const double p1 = v[g.shifted(i, axis, 1)];
    const double m1 = v[g.shifted(i, axis, -1)];
    if (order == StencilOrder::second) return (p1 - m1) / (2.0 * h);
    const double p2 = v[g.shifted(i, axis, 2)];
    const double m2 = v[g.shifted(i, axis, -2)];
    return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
}

inline double second_difference(const Grid& g, std::span<const double> v, std::size_t i, int axis, StencilOrder order)
{
    if (!g.active(axis)) return 0.0;
    const double h = g.spacing(axis);
    const double c = v[i];
    const double p1 = v[g.shifted(i, axis, 1)];
    const double m1 = v[g.shifted(i, axis, -1)];
    if (order == StencilOrder::second) return (p1 - 2.0 * c + m1) / (h * h);
    const double p2 = v[g.shifted(i, axis, 2)];
    const double m2 = v[g.shifted(i, axis, -2)];
    return (-p2 + 16.0 * p1 - 30.0 * c + 16.0 * m1 - m2) / (12.0 * h * h);
}

inline std::array<std::vector<double>, 3> split(const VectorField& f)
{
    std::array<std::vector<double>, 3> out;
    for (auto& c : out) c.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i)
        for (int a = 0; a < 3; ++a) out[a][i] = f.values[i][a];
    return out;
}

} // namespace detail

[[nodiscard]] inline ScalarField partial(const ScalarField& f, int axis, StencilOrder order = StencilOrder::second)
{
    ScalarField out(f.grid, f.time);
    parallel_for(f.values.size(), [&](std::size_t i) {
        out.values[i] = detail::first_difference(f.grid, f.values, i, axis, order);
    });
    return out;
}

[[nodiscard]] inline VectorField gradient(const ScalarField& f, StencilOrder order = StencilOrder::second)
{
    VectorField out(f.grid, f.time);
    parallel_for(f.values.size(), [&](std::size_t i) {
        for (int a = 0; a < 3; ++a) out.values[i][a] = detail::first_difference(f.grid, f.values, i, a, order);
    });
    return out;
}

[[nodiscard]] inline ScalarField divergence(const VectorField& f, StencilOrder order = StencilOrder::second)
{
    const auto c = detail::split(f);
    ScalarField out(f.grid, f.time);
    parallel_for(f.values.size(), [&](std::size_t i) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) s += detail::first_difference(f.grid, c[a], i, a, order);
        out.values[i] = s;
    });
    return out;
}

[[nodiscard]] inline VectorField curl(const VectorField& f, StencilOrder order = StencilOrder::second)
{
    const auto c = detail::split(f);
    const Grid& g = f.grid;
    VectorField out(g, f.time);
    parallel_for(f.values.size(), [&](std::size_t i) {
        auto d = [&](int comp, int axis) { return detail::first_difference(g, c[comp], i, axis, order); };
        out.values[i] = {d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)};
    });
    return out;
}

[[nodiscard]] inline ScalarField laplacian(const ScalarField& f, StencilOrder order = StencilOrder::second)
{
    ScalarField out(f.grid, f.time);
    parallel_for(f.values.size(), [&](std::size_t i) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) s += detail::second_difference(f.grid, f.values, i, a, order);
        out.values[i] = s;
    });
    return out;
}

[[nodiscard]] inline VectorField laplacian(const VectorField& f, StencilOrder order = StencilOrder::second)
{
    const auto c = detail::split(f);
    VectorField out(f.grid, f.time);
    parallel_for(f.values.size(), [&](std::size_t i) {
        for (int comp = 0; comp < 3; ++comp) {
            double s = 0.0;
            for (int a = 0; a < 3; ++a) s += detail::second_difference(f.grid, c[comp], i, a, order);
            out.values[i][comp] = s;
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise arithmetic and norms

template <class T>
[[nodiscard]] Field<T> axpby(double a, const Field<T>& x, double b, const Field<T>& y)
{
    Field<T> out(x.grid, x.time);
    for (std::size_t i = 0; i < x.values.size(); ++i) out.values[i] = a * x.values[i] + b * y.values[i];
    return out;
}

template <class T>
[[nodiscard]] Field<T> scaled(double a, const Field<T>& x)
{
    Field<T> out(x.grid, x.time);
    for (std::size_t i = 0; i < x.values.size(); ++i) out.values[i] = a * x.values[i];
    return out;
}

namespace detail {
inline double sq(double v) { return v * v; }
inline double sq(const Vec3& v) { return dot(v, v); }
inline double mag(double v) { return std::abs(v); }
inline double mag(const Vec3& v) { return norm(v); }
} // namespace detail

/// Discrete L2 norm, sqrt(sum |f|^2 dV), summed pairwise in index order.
template <class T>
[[nodiscard]] double l2_norm(const Field<T>& f)
{
    std::vector<double> s(f.values.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = detail::sq(f.values[i]);
    return std::sqrt(pairwise_sum(s) * f.grid.cell_volume());
}

template <class T>
[[nodiscard]] double linf_norm(const Field<T>& f)
{
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, detail::mag(v));
    return m;
}

[[nodiscard]] inline double integrate(const ScalarField& f)
{
    return pairwise_sum(f.values) * f.grid.cell_volume();
}

} // namespace mw
