#pragma once

// Acceptance battery keyed by criterion id. "quick" caps the refinement
// ladders at n = 256 and uses 1e5 Monte-Carlo samples; "full" runs the
// {64, 128, 256, 512} ladders and 1e6 samples.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "matterwave/electrodynamics.hpp"
#include "matterwave/experiments.hpp"
#include "matterwave/parallel.hpp"

namespace mw {

struct CriterionResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct SuiteSettings {
    std::string name;
    std::string ladder;
    std::int64_t mc_samples;
    std::uint64_t seed = kDefaultSeed;
};

[[nodiscard]] inline SuiteSettings suite_settings(const std::string& name, std::uint64_t seed = kDefaultSeed)
{
    if (name == "quick") return SuiteSettings{name, "64,128,256", 100000, seed};
    if (name == "full") return SuiteSettings{name, "64,128,256,512", 1000000, seed};
    throw UnknownExperiment("unknown suite '" + name + "' (expected quick or full)");
}

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

inline ExperimentReport run_exp(const std::string& name, std::map<std::string, ParamValue> params,
                                std::optional<std::uint64_t> seed = std::nullopt)
{
    ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.params = std::move(params);
    cfg.seed = seed;
    return run(cfg);
}

inline double num(const ExperimentReport& r, const std::string& key) { return r.value(key).get<double>(); }

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

inline CriterionResult ac1(const SuiteSettings&)
{
    const auto r = run_exp("constants", {});
    const double est = num(r, "hbar_estimate"), dev = num(r, "hbar_estimate_deviation");
    const bool ok = rel_close(est, 1.081e-34, 2e-3) && std::abs(dev - 0.025) <= 0.003;
    return {"AC1", ok, fmt("hbar_estimate=%.6e J s, deviation=%.4f", est, dev)};
}

inline CriterionResult ac2(const SuiteSettings&)
{
    const double b = num(run_exp("constants", {}), "beta_f");
    return {"AC2", rel_close(b, 2.50e-38, 5e-3), fmt("beta_f=%.6e", b)};
}

inline CriterionResult ac3(const SuiteSettings& s)
{
    const auto r = run_exp("dispersion", {{"samples", std::int64_t{100}}}, s.seed);
    const double e = num(r, "random_max_dispersion_error");
    return {"AC3", e <= 1e-12, fmt("max relative dispersion error %.3e over 100 waves", e)};
}

inline CriterionResult ac4(const SuiteSettings& s)
{
    const auto r = run_exp("dispersion", {{"samples", std::int64_t{100}}}, s.seed);
    const double e = num(r, "random_max_energy_error");
    return {"AC4", e <= 1e-12, fmt("max relative energy-split error %.3e over 100 waves", e)};
}

inline CriterionResult ac5(const SuiteSettings& s)
{
    bool ok = true;
    double worst = 0.0, min_ctl = INFINITY;
    for (const std::string field : {"density", "momentum"}) {
        const auto r = run_exp("wave-residual", {{"field", field}, {"ladder", s.ladder}});
        ok = ok && r.value("pass").get<bool>();
        worst = std::max(worst, num(r, "relative"));
        const auto c = run_exp("wave-residual", {{"field", field}, {"ladder", std::string()}, {"detune", 1.5}});
        min_ctl = std::min(min_ctl, num(c, "relative"));
    }
    const auto r = run_exp("continuity", {{"ladder", s.ladder}});
    ok = ok && r.value("pass").get<bool>();
    for (const std::string k : {"continuity", "momentum", "efield"}) worst = std::max(worst, num(r, k + "_relative"));
    const auto c = run_exp("continuity", {{"ladder", std::string()}, {"detune", 1.5}});
    for (const std::string k : {"continuity", "momentum", "efield"}) min_ctl = std::min(min_ctl, num(c, k + "_relative"));
    ok = ok && min_ctl > 0.1;
    return {"AC5", ok, fmt("worst relative %.3e at n=256, weakest negative control %.3f", worst, min_ctl)};
}

inline CriterionResult ac6(const SuiteSettings& s)
{
    const auto r = run_exp("maxwell", {{"check", std::string("all")}, {"ladder", s.ladder}});
    const double worst =
        std::max({num(r, "faraday_relative"), num(r, "ampere_relative"), num(r, "divb_relative")});
    const auto& order = r.value("ampere_order_estimate");
    return {"AC6", r.value("pass").get<bool>(),
            fmt("worst relative %.3e at n=256, ampere order %.3f", worst, order.is_number() ? order.get<double>() : NAN)};
}

inline CriterionResult ac7(const SuiteSettings& s)
{
    const auto r = run_exp("photon", {}, s.seed);
    const double a = num(r, "complementarity_max_error"), b = num(r, "field_energy_max_error");
    return {"AC7", a <= 1e-12 && b <= 1e-12, fmt("complementarity %.3e, field energy %.3e", a, b)};
}

inline CriterionResult ac8(const SuiteSettings&)
{
    const auto r = run_exp("transfer", {});
    const double q = num(r, "quantum_ratio"), h = num(r, "half_volume_ratio");
    return {"AC8", std::abs(q - 1.0) <= 1e-12 && std::abs(h - 0.5) <= 1e-12,
            fmt("E(period)/h nu = %.15f, E(half volume)/h nu = %.15f", q, h)};
}

inline CriterionResult ac9(const SuiteSettings&)
{
    bool ok = true;
    double worst_ratio = 0.0, worst_res = 0.0;
    for (double beta : {0.1, 0.5, 0.866, 0.99}) {
        const auto r = run_exp("lorentz", {{"beta", beta}});
        const double g = num(r, "gamma");
        const double e = std::max({std::abs(num(r, "phi0_ratio") - g) / g, std::abs(num(r, "volume_ratio") * g - 1.0),
                                   std::abs(num(r, "energy_ratio") - 1.0)});
        worst_ratio = std::max(worst_ratio, e);
        worst_res = std::max(worst_res, num(r, "transformed_residual"));
    }
    ok = worst_ratio <= 1e-12 && worst_res < 1e-3;
    return {"AC9", ok, fmt("worst ratio error %.3e, worst transformed residual %.3e", worst_ratio, worst_res)};
}

inline CriterionResult ac10(const SuiteSettings& s)
{
    const auto units = codata_units();
    std::mt19937_64 rng(s.seed);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double m = std::pow(10.0, -31.0 + 6.0 * uniform01(rng));
        const double u = std::pow(10.0, 2.0 + 6.0 * uniform01(rng));
        const auto r = run_exp("uncertainty", {{"m", m}, {"u", u}});
        const double k = num(r, "k"), lambda = 2.0 * std::numbers::pi / k;
        worst = std::max({worst, std::abs(num(r, "delta_k") - k) / k,
                          std::abs(num(r, "delta_x") - 0.5 * lambda) / lambda,
                          std::abs(num(r, "product_px") - 0.5 * units.h) / units.h,
                          std::abs(num(r, "corrected") - 0.5 * units.hbar) / units.hbar});
    }
    return {"AC10", worst <= 1e-12, fmt("worst relative error %.3e over 20 waves", worst)};
}

inline CriterionResult ac11(const SuiteSettings&)
{
    const double at90 = num(run_exp("compton", {{"theta-deg", 90.0}}), "delta_lambda");
    double spread = 0.0;
    for (double lambda : {1e-12, 1e-11, 1e-10, 1e-9}) {
        const double d = num(run_exp("compton", {{"theta-deg", 90.0}, {"lambda", lambda}}), "delta_lambda");
        spread = std::max(spread, std::abs(d - at90) / at90);
    }
    const double pi_shift = num(run_exp("compton", {{"theta-deg", 180.0}}), "delta_lambda");
    const bool ok = rel_close(at90, 2.4263e-12, 1e-4) && spread <= 1e-12 && rel_close(pi_shift, 2.0 * at90, 1e-12);
    return {"AC11", ok, fmt("delta_lambda(90 deg)=%.6e m, spread over 3 decades %.1e", at90, spread)};
}

inline CriterionResult ac12(const SuiteSettings& s)
{
    const auto r = run_exp("polarization", {{"samples", s.mc_samples}}, s.seed);
    const double e = num(r, "relative_error");
    return {"AC12", std::abs(e) < 0.01,
            fmt("mean |dW| vs (2/pi) hbar omega: relative error %.4e at %.0f samples", e, double(s.mc_samples))};
}

inline CriterionResult ac13(const SuiteSettings&)
{
    const double hbar = codata_units().hbar;
    const auto b = run_exp("spin", {{"kind", std::string("boson")}});
    const auto f = run_exp("spin", {{"kind", std::string("fermion")}});
    auto close = [](double a, double x) { return std::abs(a - x) <= 1e-12 * std::abs(x); };
    const bool ok = close(num(b, "g_times_s"), hbar) && close(num(f, "g_times_s"), hbar) && close(num(b, "s"), hbar) &&
                    num(b, "g") == 1.0 && close(num(f, "s"), 0.5 * hbar) && num(f, "g") == 2.0 &&
                    close(num(b, "energy_ratio"), 1.0) && close(num(f, "energy_ratio"), 1.0);
    return {"AC13", ok, fmt("boson g s / hbar = %.15f, fermion g s / hbar = %.15f", num(b, "g_times_s") / hbar,
                            num(f, "g_times_s") / hbar)};
}

inline CriterionResult ac14(const SuiteSettings& s)
{
    const std::int64_t n = 100000;
    auto corr = [&](double window, const char* key) {
        return num(run_exp("epr", {{"n", n}, {"window1", window}, {"window2", window}}, s.seed), key);
    };
    const double c0 = corr(0.0, "corr");
    const double c1 = corr(1.0, "corr_ungated");
    bool monotone = true;
    double prev = -INFINITY;
    for (int i = 0; i <= 10; ++i) {
        const double c = corr(0.1 * i, "corr_ungated");
        monotone = monotone && c >= prev;
        prev = c;
    }
    const bool ok = std::abs(c0 + 1.0) <= 0.01 && std::abs(c1) <= 0.01 && monotone;
    return {"AC14", ok, fmt("corr(window 0)=%.4f, corr(window lambda)=%.2e, monotone=%.0f", c0, c1, monotone)};
}

inline CriterionResult ac15(const SuiteSettings& s)
{
    std::mt19937_64 rng(s.seed);
    auto draw = [&](double scale) { return scale * (2.0 * uniform01(rng) - 1.0); };
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const RotationState st{{draw(1e6), draw(1e6), draw(1e6)}, {draw(1e-9), draw(1e-9), draw(1e-9)}, std::abs(draw(1e3))};
        worst = std::max(worst, norm(lorentz_force_balance(st).net));
    }
    return {"AC15", worst == 0.0, fmt("max |F_L + F_C| = %.3e over 1000 rotation states", worst)};
}

/// Representative experiments whose reports must not depend on the run or
/// on the worker count. The two-dimensional residual is large enough to be
/// split across threads.
inline std::string determinism_fingerprint(const SuiteSettings& s)
{
    std::string all;
    auto add = [&](const ExperimentReport& r) { all += report_to_json(r, false).dump() + "\n"; };
    add(run_exp("constants", {}));
    add(run_exp("dispersion", {}, s.seed));
    add(run_exp("wave-residual", {{"dir", std::string("1,1,0")}, {"n", std::int64_t{128}}, {"ladder", std::string("64,128")}}));
    add(run_exp("maxwell", {{"dir", std::string("1,1,0")}, {"n", std::int64_t{128}}, {"ladder", std::string("64,128")}}));
    add(run_exp("polarization", {{"samples", std::int64_t{20000}}}, s.seed));
    add(run_exp("epr", {{"n", std::int64_t{20000}}, {"window1", 0.2}}, s.seed));
    add(run_exp("lorentz", {}));
    add(run_exp("compton", {}));
    return all;
}

inline CriterionResult ac16(const SuiteSettings& s)
{
    const unsigned saved = max_threads();
    set_max_threads(1);
    const auto a = determinism_fingerprint(s);
    const auto b = determinism_fingerprint(s);
    set_max_threads(4);
    const auto c = determinism_fingerprint(s);
    set_max_threads(saved);
    const bool ok = a == b && a == c;
    return {"AC16", ok, ok ? "identical reports across repeated runs and 1 vs 4 threads"
                           : "reports differ between runs or thread counts"};
}

} // namespace detail

using CriterionCheck = std::function<CriterionResult(const SuiteSettings&)>;

[[nodiscard]] inline const std::vector<CriterionCheck>& criteria()
{
    using namespace detail;
    static const std::vector<CriterionCheck> all{ac1, ac2,  ac3,  ac4,  ac5,  ac6,  ac7,  ac8,
                                                 ac9, ac10, ac11, ac12, ac13, ac14, ac15, ac16};
    return all;
}

[[nodiscard]] inline std::vector<CriterionResult> run_suite(const SuiteSettings& s)
{
    std::vector<CriterionResult> out;
    for (const auto& check : criteria()) {
        try {
            out.push_back(check(s));
        } catch (const std::exception& e) {
            out.push_back({"AC" + std::to_string(out.size() + 1), false, std::string("error: ") + e.what()});
        }
    }
    return out;
}

[[nodiscard]] inline ExperimentReport suite_report(const SuiteSettings& s, const std::vector<CriterionResult>& results)
{
    ExperimentReport r;
    r.experiment = "suite";
    r.inputs = Json{{"name", s.name}, {"seed", s.seed}};
    bool all = true;
    for (const auto& c : results) {
        r.add(c.id, c.pass, "-", c.detail);
        all = all && c.pass;
    }
    r.add("all_pass", all, "-", "every acceptance criterion");
    r.timestamp = utc_timestamp();
    return r;
}

} // namespace mw
