#pragma once

// Experiment configuration: typed parameters and the key = value config
// file format.
//
//   # comment
//   seed = 7            ; global keys before any section
//   [compton]
//   lambda = 1e-10
//   theta-deg = 90
//
// Global keys are output, format, seed and threads. A section named after an
// experiment holds that experiment's parameters.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "matterwave/errors.hpp"

namespace mw {

using ParamValue = std::variant<bool, std::int64_t, double, std::string>;

[[nodiscard]] inline std::string param_type_name(const ParamValue& v)
{
    switch (v.index()) {
        case 0: return "bool";
        case 1: return "int";
        case 2: return "float";
        default: return "string";
    }
}

namespace detail {
inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
} // namespace detail

/// Parses `text` as the same type as `like`. Throws ConfigError on mismatch.
[[nodiscard]] inline ParamValue parse_param(const std::string& key, const std::string& text, const ParamValue& like)
{
    const std::string s = detail::trim(text);
    auto fail = [&]() -> ParamValue {
        throw ConfigError("parameter '" + key + "': cannot parse '" + s + "' as " + param_type_name(like));
    };
    switch (like.index()) {
        case 0:
            if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
            if (s == "false" || s == "0" || s == "no" || s == "off") return false;
            return fail();
        case 1: {
            std::size_t pos = 0;
            try {
                const long long v = std::stoll(s, &pos);
                if (pos == s.size()) return static_cast<std::int64_t>(v);
            } catch (const std::exception&) {
            }
            return fail();
        }
        case 2: {
            std::size_t pos = 0;
            try {
                const double v = std::stod(s, &pos);
                if (pos == s.size()) return v;
            } catch (const std::exception&) {
            }
            return fail();
        }
        default: return s;
    }
}

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, ParamValue> params;
    std::string output;  // empty: stdout
    std::string format = "json";
    std::optional<std::uint64_t> seed;
};

/// Raw contents of a config file: global keys and per-section keys, as text.
struct ConfigFile {
    std::map<std::string, std::string> global;
    std::map<std::string, std::map<std::string, std::string>> sections;
};

[[nodiscard]] inline ConfigFile parse_config_text(const std::string& text)
{
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::string where = "config line " + std::to_string(lineno);
        if (line.front() == '[') {
            detail::require_config(line.back() == ']', where + ": unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            detail::require_config(!section.empty(), where + ": empty section name");
            if (section != "global") cfg.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        detail::require_config(eq != std::string::npos, where + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        detail::require_config(!key.empty(), where + ": empty key");
        auto& target = section.empty() || section == "global" ? cfg.global : cfg.sections[section];
        detail::require_config(!target.contains(key), where + ": duplicate key '" + key + "'");
        target[key] = value;
    }
    return cfg;
}

/// Thrown when a file cannot be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] inline ConfigFile load_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace mw
