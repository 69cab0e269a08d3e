#pragma once

// JSON and CSV serialization for waves, fields and residual reports.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "matterwave/errors.hpp"
#include "matterwave/grid.hpp"
#include "matterwave/residuals.hpp"
#include "matterwave/wave.hpp"

namespace mw {

using Json = nlohmann::json;

/// Scientific notation with 15 significant digits.
[[nodiscard]] inline std::string format_sci(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.14e", v);
    return buf;
}

[[nodiscard]] inline Json vec_to_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

[[nodiscard]] inline Vec3 vec_from_json(const Json& j, const char* what)
{
    if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + ": expected a 3-element array");
    Vec3 v{};
    for (std::size_t i = 0; i < 3; ++i) v[i] = j.at(i).get<double>();
    return v;
}

[[nodiscard]] inline Json wave_to_json(const PlaneMaterialWave& w)
{
    return Json{{"kind", to_string(w.kind)}, {"m", w.mass},          {"u", vec_to_json(w.velocity)},
                {"rho0", w.rho0},             {"k", vec_to_json(w.wave_vector)}, {"omega", w.omega},
                {"psi0", w.psi0}};
}

/// Inverse of wave_to_json. The particle volume follows from rho0 = 2m/V.
[[nodiscard]] inline PlaneMaterialWave wave_from_json(const Json& j)
{
    try {
        PlaneMaterialWave w;
        w.kind = parse_wave_kind(j.at("kind").get<std::string>());
        w.mass = j.at("m").get<double>();
        w.velocity = vec_from_json(j.at("u"), "u");
        w.rho0 = j.at("rho0").get<double>();
        w.wave_vector = vec_from_json(j.at("k"), "k");
        w.omega = j.at("omega").get<double>();
        w.psi0 = j.at("psi0").get<double>();
        detail::require_config(w.mass > 0.0 && w.rho0 > 0.0, "wave: m and rho0 must be > 0");
        w.volume = 2.0 * w.mass / w.rho0;
        return w;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("wave: ") + e.what());
    }
}

[[nodiscard]] inline Json residual_to_json(const ResidualReport& r)
{
    Json j{{"l2", r.l2}, {"linf", r.linf}, {"scale", r.scale}, {"relative", r.relative}};
    j["order_estimate"] = std::isfinite(r.order_estimate) ? Json(r.order_estimate) : Json(nullptr);
    j["n_ladder"] = r.n_ladder;
    j["relative_ladder"] = r.relative_ladder;
    return j;
}

namespace detail {

inline void write_coords_header(std::ostream& os, const Grid& g)
{
    static constexpr const char* names[3] = {"x", "y", "z"};
    bool first = true;
    for (int a = 0; a < 3; ++a) {
        if (!g.active(a) && !(a == 0 && g.size() == 1)) continue;
        os << (first ? "" : ",") << names[a];
        first = false;
    }
}

inline void write_coords(std::ostream& os, const Grid& g, std::size_t i)
{
    const Vec3 x = g.point(i);
    bool first = true;
    for (int a = 0; a < 3; ++a) {
        if (!g.active(a) && !(a == 0 && g.size() == 1)) continue;
        os << (first ? "" : ",") << format_sci(x[a]);
        first = false;
    }
}

} // namespace detail

/// One row per grid point: coordinates of the active axes, then the value.
inline void write_field_csv(std::ostream& os, const ScalarField& f, const std::string& name = "value")
{
    detail::write_coords_header(os, f.grid);
    os << ',' << name << "\r\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        detail::write_coords(os, f.grid, i);
        os << ',' << format_sci(f.values[i]) << "\r\n";
    }
}

inline void write_field_csv(std::ostream& os, const VectorField& f, const std::string& name = "value")
{
    detail::write_coords_header(os, f.grid);
    os << ',' << name << "_x," << name << "_y," << name << "_z\r\n";
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        detail::write_coords(os, f.grid, i);
        for (double v : f.values[i]) os << ',' << format_sci(v);
        os << "\r\n";
    }
}

} // namespace mw
