#pragma once

// Experiment reports: named results, each with a unit and a provenance
// anchor naming the relation it checks, serialized to JSON or CSV.

#include <chrono>
#include <ctime>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "matterwave/errors.hpp"
#include "matterwave/io.hpp"

namespace mw {

inline constexpr const char* kVersion = "1.0.0";

struct ResultEntry {
    Json value;  // number, bool, string, or array of numbers
    std::string unit;
    std::string provenance;
};

struct ExperimentReport {
    std::string experiment;
    Json inputs = Json::object();
    std::map<std::string, ResultEntry> results;
    std::string version = kVersion;
    std::string timestamp;

    void add(const std::string& name, Json value, std::string unit, std::string provenance)
    {
        detail::require_config(!unit.empty(), "report: result '" + name + "' needs a unit");
        detail::require_config(!provenance.empty(), "report: result '" + name + "' needs a provenance anchor");
        results[name] = ResultEntry{std::move(value), std::move(unit), std::move(provenance)};
    }

    [[nodiscard]] const Json& value(const std::string& name) const
    {
        const auto it = results.find(name);
        if (it == results.end()) throw ConfigError("report: no result named '" + name + "'");
        return it->second.value;
    }
};

/// Current UTC time as ISO-8601.
[[nodiscard]] inline std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {
inline Json finite_or_null(const Json& v)
{
    if (v.is_number_float() && !std::isfinite(v.get<double>())) return nullptr;
    if (v.is_array()) {
        Json out = Json::array();
        for (const auto& x : v) out.push_back(finite_or_null(x));
        return out;
    }
    return v;
}
} // namespace detail

/// Keys come out in lexicographic order. Non-finite numbers become null.
[[nodiscard]] inline Json report_to_json(const ExperimentReport& r, bool with_timestamp = true)
{
    Json results = Json::object();
    Json provenance = Json::object();
    for (const auto& [name, e] : r.results) {
        results[name] = Json{{"value", detail::finite_or_null(e.value)}, {"unit", e.unit}, {"provenance", e.provenance}};
        provenance[name] = e.provenance;
    }
    Json j{{"experiment", r.experiment}, {"inputs", r.inputs},   {"results", results},
           {"provenance", provenance},   {"version", r.version}};
    if (with_timestamp) j["timestamp"] = r.timestamp;
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string csv_scalar(const Json& v)
{
    if (v.is_number_float()) return format_sci(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

} // namespace detail

/// One row per scalar result; series expand to one row per element with its
/// index. Metadata rows (experiment, inputs, version, timestamp) follow.
inline void write_report_csv(std::ostream& os, const ExperimentReport& r, bool with_timestamp = true)
{
    os << "name,index,value,unit,provenance\r\n";
    auto row = [&](const std::string& name, const std::string& index, const std::string& value,
                   const std::string& unit, const std::string& prov) {
        os << detail::csv_field(name) << ',' << index << ',' << detail::csv_field(value) << ','
           << detail::csv_field(unit) << ',' << detail::csv_field(prov) << "\r\n";
    };
    for (const auto& [name, e] : r.results) {
        if (e.value.is_array()) {
            for (std::size_t i = 0; i < e.value.size(); ++i)
                row(name, std::to_string(i), detail::csv_scalar(e.value[i]), e.unit, e.provenance);
        } else {
            row(name, "", detail::csv_scalar(e.value), e.unit, e.provenance);
        }
    }
    row("experiment", "", r.experiment, "-", "-");
    row("inputs", "", r.inputs.dump(), "-", "-");
    row("version", "", r.version, "-", "-");
    if (with_timestamp) row("timestamp", "", r.timestamp, "-", "-");
}

[[nodiscard]] inline std::string render_report(const ExperimentReport& r, const std::string& format,
                                               bool with_timestamp = true)
{
    if (format == "json") return report_to_json(r, with_timestamp).dump(2) + "\n";
    if (format == "csv") {
        std::ostringstream os;
        write_report_csv(os, r, with_timestamp);
        return os.str();
    }
    throw ConfigError("unknown format '" + format + "' (expected json or csv)");
}

} // namespace mw
