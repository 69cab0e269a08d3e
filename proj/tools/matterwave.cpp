// Command-line front end for the material-wave experiments.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "matterwave/config.hpp"
#include "matterwave/experiments.hpp"
#include "matterwave/parallel.hpp"
#include "matterwave/report.hpp"
#include "matterwave/suite.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kInvalidParameter = 3,
    kIoFailure = 4,
    kSuiteFailure = 5,
};

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage error or unknown experiment/suite\n"
    "  3  invalid parameter or configuration\n"
    "  4  I/O failure\n"
    "  5  suite finished with failing criteria\n"
    "Failures print {\"error\": {...}} as JSON on stderr.";

int fail(int code, const std::string& kind, const std::string& message)
{
    const mw::Json j{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
    std::cerr << j.dump() << '\n';
    return code;
}

struct Globals {
    std::string output;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string config;
};

void write_output(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw mw::IoError("cannot write to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw mw::IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw mw::IoError("write to '" + path + "' failed");
}

/// Global keys from the config file, under any values already given as flags.
void apply_file_globals(const mw::ConfigFile& file, Globals& g, const CLI::App& app)
{
    for (const auto& [key, value] : file.global) {
        if (key == "output") {
            if (app.count("--output") == 0) g.output = value;
        } else if (key == "format") {
            if (app.count("--format") == 0) g.format = value;
        } else if (key == "seed") {
            if (app.count("--seed") == 0)
                g.seed = static_cast<std::uint64_t>(std::get<std::int64_t>(mw::parse_param(key, value, std::int64_t{0})));
        } else if (key == "threads") {
            if (app.count("--threads") == 0)
                g.threads = static_cast<unsigned>(std::get<std::int64_t>(mw::parse_param(key, value, std::int64_t{0})));
        } else {
            throw mw::ConfigError("config: unknown global key '" + key + "'");
        }
    }
}

/// Every section must name an experiment and hold only its parameters.
void validate_sections(const mw::ConfigFile& file)
{
    for (const auto& [section, keys] : file.sections) {
        if (section == "suite") {
            for (const auto& [k, v] : keys)
                if (k != "name") throw mw::ConfigError("config: unknown key '" + k + "' in [suite]");
            continue;
        }
        const auto& e = mw::find_experiment(section);
        std::map<std::string, mw::ParamValue> given;
        for (const auto& [k, v] : keys) given[k] = v;
        (void)mw::resolve_params(e, given);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Material-wave experiments: residual checks, constants and Monte-Carlo samplers."};
    app.footer(kExitCodes);
    app.require_subcommand(1);

    Globals g;
    std::int64_t seed_flag = 0;
    app.add_option("-o,--output", g.output, "Write the report to this file (default stdout)");
    app.add_option("-f,--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed_flag, "Seed for Monte-Carlo experiments")->check(CLI::NonNegativeNumber);
    app.add_option("--threads", g.threads, "Worker cap for grid loops (0 = all cores)");
    app.add_option("--config", g.config, "key = value config file; flags override it");
    app.fallthrough();

    std::map<std::string, std::map<std::string, std::pair<CLI::Option*, std::string>>> flags;
    std::map<std::string, CLI::App*> subs;
    for (const auto& e : mw::registry()) {
        auto* sub = app.add_subcommand(e.name, e.summary);
        subs[e.name] = sub;
        auto& slot = flags[e.name];
        for (const auto& p : e.params) {
            auto& [opt, text] = slot[p.name];
            opt = sub->add_option("--" + p.name, text, p.help + " [" + mw::param_type_name(p.fallback) + "]");
        }
    }
    std::string suite_name = "quick";
    auto* suite_cmd = app.add_subcommand("suite", "run the acceptance battery (quick or full)");
    suite_cmd->add_option("name", suite_name, "quick or full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::RequiredError& e) {
        return fail(kUsage, "unknown_experiment", std::string("unknown or missing experiment: ") + e.what());
    } catch (const CLI::ParseError& e) {
        return fail(kUsage, "usage", e.what());
    }
    if (app.count("--seed") > 0) g.seed = static_cast<std::uint64_t>(seed_flag);

    try {
        std::optional<mw::ConfigFile> file;
        if (!g.config.empty()) {
            file = mw::load_config_file(g.config);
            apply_file_globals(*file, g, app);
            validate_sections(*file);
        }
        if (g.format != "json" && g.format != "csv")
            throw mw::ConfigError("format: expected json or csv, got '" + g.format + "'");
        mw::set_max_threads(g.threads);

        if (suite_cmd->parsed()) {
            if (file && file->sections.contains("suite") && suite_cmd->count("name") == 0) {
                const auto& s = file->sections.at("suite");
                if (s.contains("name")) suite_name = s.at("name");
            }
            const auto settings = mw::suite_settings(suite_name, g.seed.value_or(mw::kDefaultSeed));
            const auto results = mw::run_suite(settings);
            bool all = true;
            for (const auto& r : results) {
                std::cout << r.id << (r.id.size() < 4 ? "  " : " ") << (r.pass ? "PASS" : "FAIL") << "  " << r.detail
                          << '\n';
                all = all && r.pass;
            }
            if (!g.output.empty()) write_output(mw::render_report(mw::suite_report(settings, results), g.format), g.output);
            return all ? kOk : kSuiteFailure;
        }

        mw::ExperimentConfig cfg;
        for (const auto& [name, sub] : subs) {
            if (!sub->parsed()) continue;
            cfg.experiment = name;
            if (file && file->sections.contains(name))
                for (const auto& [k, v] : file->sections.at(name)) cfg.params[k] = v;
            for (const auto& [k, slot] : flags.at(name))
                if (slot.first->count() > 0) cfg.params[k] = slot.second;
        }
        cfg.output = g.output;
        cfg.format = g.format;
        cfg.seed = g.seed;

        const auto report = mw::run(cfg);
        write_output(mw::render_report(report, cfg.format), cfg.output);
        return kOk;
    } catch (const mw::UnknownExperiment& e) {
        return fail(kUsage, "unknown_experiment", e.what());
    } catch (const mw::IoError& e) {
        return fail(kIoFailure, "io", e.what());
    } catch (const mw::ConfigError& e) {
        return fail(kInvalidParameter, "invalid_parameter", e.what());
    } catch (const mw::DomainError& e) {
        return fail(kInvalidParameter, "invalid_parameter", e.what());
    } catch (const std::exception& e) {
        return fail(kInvalidParameter, "error", e.what());
    }
}
