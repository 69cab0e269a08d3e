#pragma once

// Registered experiments. Each one declares its typed parameters with
// defaults and fills an ExperimentReport from the library routines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "matterwave/config.hpp"
#include "matterwave/electrodynamics.hpp"
#include "matterwave/errors.hpp"
#include "matterwave/interactions.hpp"
#include "matterwave/io.hpp"
#include "matterwave/photon.hpp"
#include "matterwave/quantum.hpp"
#include "matterwave/relativity.hpp"
#include "matterwave/report.hpp"
#include "matterwave/residuals.hpp"
#include "matterwave/units.hpp"
#include "matterwave/wave.hpp"

namespace mw {

/// Thrown for an experiment name that is not registered.
class UnknownExperiment : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ParamSpec {
    std::string name;
    ParamValue fallback;
    std::string help;
};

class Params {
public:
    explicit Params(std::map<std::string, ParamValue> values) : values_(std::move(values)) {}

    [[nodiscard]] double num(const std::string& k) const
    {
        const auto& v = at(k);
        if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
        return std::get<double>(v);
    }
    [[nodiscard]] std::int64_t integer(const std::string& k) const { return std::get<std::int64_t>(at(k)); }
    [[nodiscard]] const std::string& str(const std::string& k) const { return std::get<std::string>(at(k)); }
    [[nodiscard]] bool flag(const std::string& k) const { return std::get<bool>(at(k)); }

private:
    const ParamValue& at(const std::string& k) const
    {
        const auto it = values_.find(k);
        if (it == values_.end()) throw ConfigError("missing parameter '" + k + "'");
        return it->second;
    }
    std::map<std::string, ParamValue> values_;
};

struct Experiment {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
    bool seeded = false;
    std::function<void(const Params&, std::uint64_t, ExperimentReport&)> body;
};

inline constexpr std::uint64_t kDefaultSeed = 20240521;

namespace detail {

inline std::vector<double> parse_list(const std::string& key, const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(std::get<double>(parse_param(key, item, 0.0)));
    }
    return out;
}

inline std::vector<std::size_t> parse_ladder(const std::string& s)
{
    std::vector<std::size_t> out;
    for (double v : parse_list("ladder", s)) {
        require_config(v >= 8.0 && v == std::floor(v), "ladder: entries must be integers >= 8");
        out.push_back(static_cast<std::size_t>(v));
    }
    require_config(std::is_sorted(out.begin(), out.end()), "ladder: entries must be increasing");
    return out;
}

inline Vec3 parse_direction(const std::string& s)
{
    const auto v = parse_list("dir", s);
    require_config(v.size() == 3, "dir: expected three comma-separated components");
    const Vec3 d{v[0], v[1], v[2]};
    require_config(norm(d) > 0.0, "dir: direction must be nonzero");
    return normalized(d);
}

inline StencilOrder parse_order(std::int64_t o)
{
    if (o == 2) return StencilOrder::second;
    if (o == 4) return StencilOrder::fourth;
    throw ConfigError("order: expected 2 or 4");
}

inline std::size_t parse_n(std::int64_t n)
{
    require_config(n >= 8, "n: need at least 8 points per axis");
    return static_cast<std::size_t>(n);
}

inline ParamSpec p_m() { return {"m", codata_units().m_e, "particle mass, kg"}; }
inline ParamSpec p_u() { return {"u", 1.0e6, "speed, m/s"}; }
inline ParamSpec p_dir() { return {"dir", std::string("1,0,0"), "direction of motion, x,y,z"}; }
inline ParamSpec p_n() { return {"n", std::int64_t{256}, "grid points per active axis"}; }
inline ParamSpec p_order() { return {"order", std::int64_t{2}, "stencil order, 2 or 4"}; }
inline ParamSpec p_waves() { return {"waves", std::int64_t{1}, "wavelengths per domain along each active axis"}; }
inline ParamSpec p_ladder() { return {"ladder", std::string("64,128,256,512"), "refinement ladder, empty to skip"}; }

inline PlaneMaterialWave wave_from(const Params& p)
{
    return make_wave(p.num("m"), p.num("u") * parse_direction(p.str("dir")));
}

inline Vec3 waves_from(const Params& p)
{
    require_config(p.integer("waves") >= 1, "waves: must be >= 1");
    const double w = static_cast<double>(p.integer("waves"));
    return {w, w, w};
}

constexpr double kResidualTolerance = 1e-3;
constexpr double kOrderTolerance = 0.3;

/// Residual below tolerance, and the ladder either converges at the stencil
/// order or sits at round-off throughout.
inline bool residual_passes(const ResidualReport& at_n, const ResidualReport& ladder, StencilOrder order)
{
    if (!(at_n.relative < kResidualTolerance)) return false;
    if (ladder.n_ladder.empty() || ladder.at_roundoff()) return true;
    return std::abs(ladder.order_estimate - order_value(order)) <= kOrderTolerance;
}

inline void add_residual(ExperimentReport& r, const std::string& prefix, const ResidualReport& at_n,
                         const ResidualReport& ladder, const std::string& prov)
{
    r.add(prefix + "relative", at_n.relative, "1", prov);
    r.add(prefix + "l2", at_n.l2, "field units", prov);
    r.add(prefix + "linf", at_n.linf, "field units", prov);
    r.add(prefix + "scale", at_n.scale, "field units", prov);
    if (!ladder.n_ladder.empty()) {
        r.add(prefix + "order_estimate", ladder.order_estimate, "1", "least-squares slope of log residual vs log n");
        r.add(prefix + "n_ladder", ladder.n_ladder, "points", "refinement ladder");
        r.add(prefix + "relative_ladder", ladder.relative_ladder, "1", prov);
    }
}

/// Residual at n plus, when a ladder is given, its convergence study.
struct ResidualRun {
    ResidualReport at_n;
    ResidualReport ladder;
};

inline ResidualRun run_residual(const Params& p, const std::function<ResidualReport(std::size_t)>& eval)
{
    ResidualRun out;
    const std::size_t n = parse_n(p.integer("n"));
    const auto ladder = parse_ladder(p.str("ladder"));
    if (!ladder.empty()) {
        std::vector<ResidualReport> reports;
        for (std::size_t m : ladder) reports.push_back(eval(m));
        std::size_t i = 0;
        out.ladder = convergence_study(ladder, [&](std::size_t) { return reports[i++]; });
        const auto it = std::find(ladder.begin(), ladder.end(), n);
        out.at_n = it != ladder.end() ? reports[static_cast<std::size_t>(it - ladder.begin())] : eval(n);
    } else {
        out.at_n = eval(n);
    }
    return out;
}

// Experiment bodies.

inline void run_constants(const Params&, std::uint64_t, ExperimentReport& r)
{
    const auto u = codata_units();
    const auto d = derive_constants(u);
    r.add("e", u.e, "C", "CODATA 2018 elementary charge (exact)");
    r.add("m_e", u.m_e, "kg", "CODATA 2018 electron mass");
    r.add("c", u.c, "m/s", "speed of light (exact)");
    r.add("hbar", u.hbar, "J s", "reference reduced Planck constant");
    r.add("h", u.h, "J s", "h = 2 pi hbar");
    r.add("beta_f", d.beta_f, "A m^2 kg^(1/2)", "field constant beta_f = e hbar sqrt(2/m_e)");
    r.add("beta_f_ampere_convention", "model ampere [A] = kg^(1/2)/(m s); not substituted into SI arithmetic", "-",
          "field constant unit annotation");
    r.add("hbar_estimate", d.hbar_estimate, "J s", "Planck constant estimate hbar = e sqrt(m_e/2)");
    r.add("hbar_estimate_deviation", (d.hbar_estimate - u.hbar) / u.hbar, "1",
          "relative deviation of the Planck constant estimate");
    r.add("lambda_compton", d.lambda_compton, "m", "Compton wavelength h/(m_e c)");
}

inline void run_dispersion(const Params& p, std::uint64_t seed, ExperimentReport& r)
{
    const auto units = codata_units();
    const auto w = wave_from(p);
    const auto e = energy_split(w);
    r.add("k", w.wave_vector, "1/m", "wave vector k = m u / hbar");
    r.add("omega", w.omega, "rad/s", "frequency omega = m |u|^2 / hbar");
    r.add("wavelength", w.wavelength(), "m", "wavelength h/(m |u|)");
    r.add("frequency", w.frequency(), "Hz", "frequency nu = omega / 2 pi");
    r.add("phase_velocity", w.phase_velocity(), "m/s", "dispersion omega/|k| = |u|");
    r.add("lambda_nu", w.wavelength() * w.frequency(), "m/s", "dispersion lambda nu = |u|");
    r.add("w_kinetic", e.w_kinetic, "J", "kinetic energy m u^2 / 2");
    r.add("w_potential", e.w_potential, "J", "intrinsic potential energy m u^2 / 2");
    r.add("w_total", e.w_total, "J", "total energy m u^2");
    r.add("hbar_omega", units.hbar * w.omega, "J", "total energy hbar omega");

    const std::int64_t samples = p.integer("samples");
    require_config(samples >= 1, "samples: must be >= 1");
    std::mt19937_64 rng(seed);
    double worst_disp = 0.0, worst_energy = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double m = std::pow(10.0, -31.0 + 6.0 * uniform01(rng));
        const double speed = std::pow(10.0, 2.0 + 6.0 * uniform01(rng));
        const double cz = 2.0 * uniform01(rng) - 1.0, az = 2.0 * std::numbers::pi * uniform01(rng);
        const double sz = std::sqrt(1.0 - cz * cz);
        const auto rw = make_wave(m, speed * Vec3{sz * std::cos(az), sz * std::sin(az), cz}, units);
        const auto rs = energy_split(rw);
        worst_disp = std::max({worst_disp, std::abs(rw.phase_velocity() - speed) / speed,
                               std::abs(rw.wavelength() * rw.frequency() - speed) / speed});
        worst_energy = std::max({worst_energy, std::abs(rs.w_kinetic - rs.w_potential) / rs.w_total,
                                 std::abs(rs.w_total - units.hbar * rw.omega) / rs.w_total});
    }
    r.add("random_max_dispersion_error", worst_disp, "1", "dispersion omega/|k| = lambda nu = |u|");
    r.add("random_max_energy_error", worst_energy, "1", "energy split W_K = W_P, W_T = hbar omega");
}

inline void run_wave_residual(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto order = parse_order(p.integer("order"));
    const double detune = p.num("detune");
    require_config(detune > 0.0, "detune: must be > 0");
    const auto w = wave_from(p);
    const auto sampled = detuned(w, w.omega * detune);
    const auto waves = waves_from(p);
    const std::string field = p.str("field");
    WaveField which;
    if (field == "density") which = WaveField::density;
    else if (field == "momentum") which = WaveField::momentum;
    else throw ConfigError("field: expected density or momentum");

    // The operator keeps the wave's own speed; a detuned sample breaks the
    // dispersion relation it relies on.
    auto eval = [&](std::size_t n) {
        const auto g = commensurate_grid(w, n, waves);
        const double inv_u2 = 1.0 / dot(w.velocity, w.velocity);
        if (which == WaveField::density) {
            const auto lap = laplacian(sample(sampled, FieldKind::density, g, 0.0), order);
            const auto d2 = sample(sampled, FieldKind::density, g, 0.0, 2);
            return make_report(axpby(1.0, lap, -inv_u2, d2), l2_norm(lap));
        }
        const auto lap = laplacian(sample_momentum(sampled, g, 0.0), order);
        const auto d2 = sample_momentum(sampled, g, 0.0, 2);
        return make_report(axpby(1.0, lap, -inv_u2, d2), l2_norm(lap));
    };
    const auto run = run_residual(p, eval);
    add_residual(r, "", run.at_n, run.ladder, "wave equation lap f = (1/u^2) d2f/dt2");
    r.add("pass", residual_passes(run.at_n, run.ladder, order), "-", "residual below 1e-3 with expected order");
}

inline void run_continuity(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto order = parse_order(p.integer("order"));
    const double detune = p.num("detune");
    require_config(detune > 0.0, "detune: must be > 0");
    const auto w = detuned(wave_from(p), wave_from(p).omega * detune);
    const auto waves = waves_from(p);
    const std::string check = p.str("check");
    require_config(check == "continuity" || check == "momentum" || check == "efield" || check == "all",
                   "check: expected continuity, momentum, efield or all");
    bool pass = true;
    auto one = [&](const std::string& name, const std::string& prov,
                   const std::function<ResidualReport(const Grid&)>& fn) {
        if (check != "all" && check != name) return;
        const auto run = run_residual(p, [&](std::size_t n) { return fn(commensurate_grid(w, n, waves)); });
        add_residual(r, name + "_", run.at_n, run.ladder, prov);
        pass = pass && residual_passes(run.at_n, run.ladder, order);
    };
    one("continuity", "continuity div p + d rho/dt = 0",
        [&](const Grid& g) { return continuity_residual(w, g, 0.0, order); });
    one("momentum", "momentum balance dp/dt = -u^2 grad rho",
        [&](const Grid& g) { return momentum_balance_residual(w, g, 0.0, order); });
    one("efield", "free-wave field sigma_bar E = -grad phi + dp/dt = 0",
        [&](const Grid& g) { return free_efield_residual(w, g, 0.0, order); });
    r.add("pass", pass, "-", "residuals below 1e-3 with expected order");
}

/// Transversal field pair that propagates at the wave's own phase speed.
inline PhotonMode field_mode_of(const PlaneMaterialWave& w)
{
    const Vec3 ek = normalized(w.wave_vector);
    Vec3 trial = std::abs(ek[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
    PhotonMode m;
    m.rho0 = w.rho0;
    m.wave_vector = w.wave_vector;
    m.e_t = normalized(cross(ek, trial));
    m.volume = w.volume;
    m.c = w.speed();
    return m;
}

inline void run_maxwell(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto order = parse_order(p.integer("order"));
    const auto units = codata_units();
    const std::string kind = p.str("wave");
    PlaneMaterialWave w;
    if (kind == "electron") w = wave_from(p);
    else if (kind == "photon") w = make_photon_wave(p.num("nu"), parse_direction(p.str("dir")), 0.0, units);
    else throw ConfigError("wave: expected electron or photon");
    const auto waves = waves_from(p);
    const std::string check = p.str("check");
    require_config(check == "faraday" || check == "ampere" || check == "divb" || check == "emwave" || check == "all",
                   "check: expected faraday, ampere, divb, emwave or all");

    bool pass = true;
    auto one = [&](const std::string& name, const std::string& prov,
                   const std::function<ResidualReport(const Grid&)>& fn) {
        if (check != "all" && check != name) return;
        const auto run = run_residual(p, [&](std::size_t n) { return fn(commensurate_grid(w, n, waves)); });
        add_residual(r, name + "_", run.at_n, run.ladder, prov);
        pass = pass && residual_passes(run.at_n, run.ladder, order);
    };
    one("faraday", "Faraday law curl E + dB/dt = 0",
        [&](const Grid& g) { return maxwell_residuals(w, g, 0.0, units, order).faraday; });
    one("ampere", "vacuum Ampere law (1/u^2) dE/dt = curl B",
        [&](const Grid& g) { return maxwell_residuals(w, g, 0.0, units, order).ampere_vacuum; });
    one("divb", "div B = 0", [&](const Grid& g) { return maxwell_residuals(w, g, 0.0, units, order).div_b; });
    one("emwave", "field wave equation lap F = (1/u^2) d2F/dt2", [&](const Grid& g) {
        return em_wave_residual(transversal_field_pair(field_mode_of(w), g, 0.0, units), w.speed(), order);
    });
    r.add("wave_kind", kind, "-", "material wave under test");
    r.add("sigma_bar", sigma_bar_of(w, units), "C/m^3", "sigma_bar = (e/m) rho_bar");
    r.add("pass", pass, "-", "residuals below 1e-3 with expected order or at round-off");
}

inline void run_lorentz(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto units = codata_units();
    const auto f = make_frame(p.num("beta"));
    const auto w = make_wave(p.num("m"), Vec3{p.num("u"), 0.0, 0.0}, units);
    const auto q = transform_wave_quantities(w, f);
    r.add("gamma", f.gamma, "1", "Lorentz factor 1/sqrt(1 - beta^2)");
    r.add("phi0_ratio", q.phi0_ratio(), "1", "intrinsic potential phi0' = gamma phi0");
    r.add("volume_ratio", q.volume_ratio(), "1", "particle volume V' = V / gamma");
    r.add("energy_ratio", q.energy_ratio(), "1", "integral energy phi0' V' = phi0 V");
    r.add("u_prime", velocity_transform(w.velocity[0], f, units.c), "m/s", "velocity addition u' = (u - V)/(1 - uV/c^2)");

    const FourVector event{units.c * 1e-9, 0.3, -0.2, 0.1};
    const double s0 = interval(event), s1 = interval(boost(f, event));
    r.add("interval_relative_change", std::abs(s1 - s0) / std::abs(s0), "1", "invariant interval under boost");

    const std::size_t n = parse_n(p.integer("n"));
    const auto g = commensurate_grid(w, n);
    const auto order = parse_order(p.integer("order"));
    const auto res = transformed_wave_residual(w, f, g, 0.0, units, order);
    const auto ctl = transformed_wave_residual(w, f, g, 0.0, units, order, true);
    r.add("transformed_residual", res.relative, "1", "moving-frame wave equation with (1 - beta^2) factors");
    r.add("control_residual", ctl.relative, "1", "moving-frame wave equation, velocity addition sign flipped");
}

inline void run_uncertainty(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto units = codata_units();
    const auto res = uncertainty_product(wave_from(p), units);
    r.add("k", res.k, "1/m", "wavenumber m |u| / hbar");
    r.add("delta_v", res.delta_v, "J", "potential uncertainty from the intrinsic potential m u^2");
    r.add("delta_k", res.delta_k, "1/m", "wavenumber uncertainty hbar dk = m dV/(hbar k)");
    r.add("delta_x", res.delta_x, "m", "position uncertainty lambda / 2");
    r.add("product_kx", res.product_kx, "1", "dk dx = pi");
    r.add("product_px", res.product_px, "J s", "dp dx = h / 2");
    r.add("corrected", res.corrected, "J s", "dp dx / 2 pi = hbar / 2");
    r.add("chain_mismatch", res.chain_mismatch, "1", "hbar dk = m u closure");
}

inline void run_schrodinger(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto units = codata_units();
    const auto order = parse_order(p.integer("order"));
    const auto w = wave_from(p);
    const auto waves = waves_from(p);
    const double v0 = p.num("v0");
    SchrodingerSetup s;
    s.mass = w.mass;
    s.potential = constant_potential(v0);
    s.total_energy = 0.5 * w.mass * dot(w.velocity, w.velocity) + v0;

    const auto g = commensurate_grid(w, parse_n(p.integer("n")), waves);
    const auto kin = kinetic_operator_check(w, g, units, order);
    r.add("kinetic_relative", kin.residual.relative, "1", "kinetic operator -hbar^2/2m lap psi = (m u^2/2) psi");
    r.add("eigenvalue", kin.eigenvalue, "J", "hbar^2 k^2 / 2m");
    r.add("discrete_eigenvalue", kin.discrete_eigenvalue, "J", "Rayleigh quotient of the discrete kinetic operator");
    r.add("kinetic_energy", 0.5 * w.mass * dot(w.velocity, w.velocity), "J", "m u^2 / 2");

    const auto run = run_residual(p, [&](std::size_t n) {
        return schrodinger_residual(s, sample_psi(w, commensurate_grid(w, n, waves)), units, order);
    });
    add_residual(r, "schrodinger_", run.at_n, run.ladder, "time-free Schroedinger equation with constant potential");
    r.add("total_energy", s.total_energy, "J", "W_T = m u^2 / 2 + V0");
    r.add("pass", kin.residual.relative < kResidualTolerance && residual_passes(run.at_n, run.ladder, order), "-",
          "residuals below 1e-3 with expected order");
}

inline void run_photon(const Params& p, std::uint64_t seed, ExperimentReport& r)
{
    const auto units = codata_units();
    const double nu = p.num("nu");
    const double periods = p.num("duration-periods");
    require_config(periods >= 0.0, "duration-periods: must be >= 0");
    const TransferEvent ev{nu, p.num("fraction"), periods / nu};
    const auto tr = transfer_rate(ev, units);
    r.add("nu", nu, "Hz", "photon frequency");
    r.add("volume_fraction", ev.volume_fraction, "1", "interacting volume fraction");
    r.add("duration", tr.duration, "s", "interaction interval");
    r.add("rate", tr.rate, "J/s", "transfer rate h nu^2 times volume fraction");
    r.add("energy", tr.energy, "J", "transferred energy rate x duration");
    r.add("energy_over_h_nu", tr.energy / (units.h * nu), "1", "transferred energy in units of h nu");

    // Complementarity over random space-time points.
    const auto mode = make_photon_mode(nu, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, p.num("rho0"), 1.0, units);
    std::mt19937_64 rng(seed);
    const double lambda = 2.0 * std::numbers::pi / mode.wavenumber();
    double worst_sum = 0.0, worst_field = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 x{lambda * (20.0 * uniform01(rng) - 10.0), lambda * uniform01(rng), lambda * uniform01(rng)};
        const double t = (20.0 * uniform01(rng) - 10.0) / nu;
        const auto pot = photon_potentials(mode, x, t);
        worst_sum = std::max(worst_sum, std::abs(pot.phi_k + pot.phi_e - pot.phi_total) / pot.phi_total);
        const double ed = gaussian_energy_density(transversal_fields(mode, x, t, units));
        worst_field = std::max(worst_field, std::abs(ed - pot.phi_e) / pot.phi_total);
    }
    r.add("complementarity_max_error", worst_sum, "1", "photon complementarity phi_k + phi_e = rho0 c^2");
    r.add("field_energy_max_error", worst_field, "1", "transversal field energy (E^2 + B^2)/8 pi = phi_e");
}

inline void run_charge(const Params&, std::uint64_t, ExperimentReport& r)
{
    const auto units = codata_units();
    const auto q = charge_quantum(units);
    r.add("beta_f", q.beta_f, "A m^2 kg^(1/2)", "field constant beta_f = e hbar sqrt(2/m_e)");
    r.add("e_estimate", q.e_estimate, "C (model)", "charge quantum sqrt(beta_f)");
    r.add("a_l_flow", q.a_l_flow, "model units", "longitudinal field flow (t1 - t0) A_L");
    r.add("chain_residual", q.chain_residual, "model units", "(t1 - t0) A_L = (4 pi/3) e");
    r.add("relative_to_e", q.relative_to_e, "1", "charge estimate vs elementary charge");
    r.add("e_squared", units.e * units.e, "C^2", "elementary charge squared");
    r.add("dimensionally_closed", q.dimensionally_closed, "-",
          "chain holds per unit volume and unit time only; not closed in SI");
}

inline void run_transfer(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto units = codata_units();
    const double nu = p.num("nu");
    const auto full = transfer_rate(TransferEvent{nu, 1.0, std::nullopt}, units);
    const auto half = transfer_rate(TransferEvent{nu, 0.5, std::nullopt}, units);
    const double hnu = units.h * nu;
    r.add("rate", full.rate, "J/s", "transfer rate h nu^2");
    r.add("period", full.duration, "s", "one period 1/nu");
    r.add("energy_one_period", full.energy, "J", "energy quantum h nu as rate over one period");
    r.add("h_nu", hnu, "J", "h nu");
    r.add("energy_half_volume", half.energy, "J", "half-volume interaction h nu / 2");
    r.add("quantum_ratio", full.energy / hnu, "1", "energy over one period / h nu");
    r.add("half_volume_ratio", half.energy / hnu, "1", "half-volume energy / h nu");
}

inline void run_polarization(const Params& p, std::uint64_t seed, ExperimentReport& r)
{
    const auto units = codata_units();
    const std::int64_t samples = p.integer("samples");
    require_config(samples >= 1, "samples: must be >= 1");
    const double omega = p.num("omega");
    require_config(omega > 0.0, "omega: must be > 0");
    const double k = omega / units.c;
    const auto avg = polarization_average(static_cast<std::uint64_t>(samples), seed, k, units.hbar * omega);
    r.add("samples", samples, "1", "Monte-Carlo samples over uniform polarization angle");
    r.add("hbar_omega", units.hbar * omega, "J", "photon energy hbar omega");
    r.add("mean_abs_shift", avg.mean_abs_shift, "J", "mean |dW| from k^2 = k_el^2 + k_ph^2 + 2 k_el k_ph cos theta");
    r.add("expected", avg.expected, "J", "(2/pi) hbar omega");
    r.add("relative_error", (avg.mean_abs_shift - avg.expected) / avg.expected, "1", "MC estimate vs (2/pi) hbar omega");
    r.add("mean_k_sq", avg.mean_k_sq, "1/m^2", "mean combined k^2");
}

inline void run_spin(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto units = codata_units();
    const auto s = spin_assign(parse_particle_kind(p.str("kind")), parse_direction(p.str("axis")), p.num("omega"), units);
    r.add("kind", to_string(s.kind), "-", "particle kind");
    r.add("s", s.s, "J s", "spin magnitude");
    r.add("g", s.g, "1", "gyromagnetic ratio");
    r.add("g_times_s", s.g * s.s, "J s", "g s = hbar");
    r.add("axis", s.axis, "1", "spin axis parallel to B");
    r.add("energy", s.energy, "J", "magnetic energy g (e/2m) B s");
    r.add("expected", s.expected, "J", "hbar omega (boson) or hbar omega / 2 (fermion)");
    r.add("energy_ratio", s.energy_ratio, "1", "magnetic energy / particle energy");
}

inline void run_compton(const Params& p, std::uint64_t, ExperimentReport& r)
{
    const auto c = compton_shift(p.num("lambda"), p.num("theta-deg") * std::numbers::pi / 180.0);
    const std::string prov = "Compton shift via Doppler shift of longitudinal recoil";
    r.add("omega", c.omega, "rad/s", "source angular frequency");
    r.add("u_el0", c.u_el0, "m/s", "recoil velocity sqrt(hbar omega / m)");
    r.add("beta_el", c.beta_el, "1", "recoil velocity / c");
    r.add("nu_prime_first_order", c.nu_prime_first_order, "Hz", "first-order Doppler nu (1 - beta)");
    r.add("nu_prime_exact", c.nu_prime_exact, "Hz", "relativistic Doppler nu sqrt((1 - beta)/(1 + beta))");
    r.add("doppler_first_order", c.doppler_first_order, "m", "first-order Doppler shift lambda beta");
    r.add("doppler_exact", c.doppler_exact, "m", "relativistic Doppler wavelength shift");
    r.add("lambda_compton", c.lambda_compton, "m", "Compton wavelength h/(m c)");
    r.add("chain_closes", c.chain_closes, "-", "first-order Doppler shift equals h/(m c)");
    r.add("delta_lambda", c.delta_lambda, "m", prov + ", lambda_C (1 - cos theta)");
    r.add("lambda_prime", c.lambda_prime, "m", prov);
}

inline void run_epr(const Params& p, std::uint64_t seed, ExperimentReport& r)
{
    const std::int64_t n = p.integer("n");
    require_config(n >= 1, "n: must be >= 1");
    const EPRSampler s{p.num("lambda"), p.num("omega"), seed};
    const auto res = epr_sample(s, static_cast<std::uint64_t>(n), p.num("window1"), p.num("window2"));
    r.add("corr", res.corr, "1", "spin correlation over definite pairs (window < lambda/2)");
    r.add("corr_ungated", res.corr_ungated, "1", "spin correlation over all pairs");
    r.add("valid_fraction", res.valid_fraction, "1", "fraction of pairs with definite readout");
    r.add("n", n, "1", "sampled pairs");
}

inline std::vector<ParamSpec> residual_params(std::vector<ParamSpec> extra = {})
{
    std::vector<ParamSpec> v{p_m(), p_u(), p_dir(), p_n(), p_order(), p_waves(), p_ladder()};
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
}

} // namespace detail

[[nodiscard]] inline const std::vector<Experiment>& registry()
{
    using namespace detail;
    static const std::vector<Experiment> all{
        {"constants", "physical and derived constants", {}, false, run_constants},
        {"dispersion", "dispersion and energy split of a material wave",
         {p_m(), p_u(), p_dir(), {"samples", std::int64_t{100}, "random waves checked"}}, true, run_dispersion},
        {"wave-residual", "wave-equation residual of density or momentum",
         residual_params({{"field", std::string("density"), "density or momentum"},
                          {"detune", 1.0, "frequency multiplier; != 1 breaks the dispersion relation"}}),
         false, run_wave_residual},
        {"continuity", "continuity, momentum-balance and free E-field residuals",
         residual_params({{"check", std::string("all"), "continuity, momentum, efield or all"},
                          {"detune", 1.0, "frequency multiplier; != 1 breaks the dispersion relation"}}),
         false, run_continuity},
        {"maxwell", "Maxwell-form residuals of material-wave fields",
         residual_params({{"wave", std::string("electron"), "electron or photon"},
                          {"check", std::string("all"), "faraday, ampere, divb, emwave or all"},
                          {"nu", 5.0e14, "photon frequency, Hz"}}),
         false, run_maxwell},
        {"lorentz", "moving-frame quantities and transformed wave residual",
         {{"beta", 0.5, "frame velocity / c"}, p_m(), {"u", 1.0e6, "speed along x, m/s"}, p_n(), p_order()}, false,
         run_lorentz},
        {"uncertainty", "uncertainty product from the intrinsic potential", {p_m(), p_u(), p_dir()}, false,
         run_uncertainty},
        {"schrodinger", "kinetic operator and time-free Schroedinger residual",
         residual_params({{"v0", 0.0, "constant potential energy, J"}}), false, run_schrodinger},
        {"photon", "photon energy transfer and complementarity",
         {{"nu", 5.0e14, "frequency, Hz"},
          {"fraction", 1.0, "interacting volume fraction"},
          {"duration-periods", 1.0, "interaction duration in periods"},
          {"rho0", 1.0e-12, "peak density for the field checks, kg/m^3"}},
         true, run_photon},
        {"charge", "charge-quantum chain from the field constant", {}, false, run_charge},
        {"transfer", "energy quantum as transfer rate over one period", {{"nu", 5.0e14, "frequency, Hz"}}, false,
         run_transfer},
        {"polarization", "Monte-Carlo polarization energy shift",
         {{"samples", std::int64_t{1000000}, "Monte-Carlo samples"}, {"omega", 3.0e15, "photon angular frequency, rad/s"}},
         true, run_polarization},
        {"spin", "spin and gyromagnetic ratio assignment",
         {{"kind", std::string("boson"), "boson or fermion"},
          {"axis", std::string("0,0,1"), "magnetic field direction"},
          {"omega", 1.0e15, "angular frequency, rad/s"}},
         false, run_spin},
        {"compton", "Compton shift from longitudinal recoil",
         {{"lambda", 1.0e-10, "incident wavelength, m"}, {"theta-deg", 90.0, "scattering angle, degrees"}}, false,
         run_compton},
        {"epr", "spin correlation of paired oscillating fields",
         {{"n", std::int64_t{100000}, "pairs"},
          {"window1", 0.0, "detector 1 window, m"},
          {"window2", 0.0, "detector 2 window, m"},
          {"lambda", 1.0, "spin-field wavelength, m"},
          {"omega", 1.0, "spin-field angular frequency, rad/s"}},
         true, run_epr},
    };
    return all;
}

[[nodiscard]] inline const Experiment& find_experiment(const std::string& name)
{
    for (const auto& e : registry())
        if (e.name == name) return e;
    throw UnknownExperiment("unknown experiment '" + name + "'");
}

/// Defaults overlaid with the config's parameters. Unknown keys are rejected;
/// string values are parsed as the declared type.
[[nodiscard]] inline std::map<std::string, ParamValue> resolve_params(const Experiment& e,
                                                                      const std::map<std::string, ParamValue>& given)
{
    std::map<std::string, ParamValue> out;
    for (const auto& s : e.params) out[s.name] = s.fallback;
    for (const auto& [k, v] : given) {
        const auto it = out.find(k);
        if (it == out.end()) throw ConfigError("experiment '" + e.name + "': unknown parameter '" + k + "'");
        const auto& like = it->second;
        if (v.index() == like.index()) {
            it->second = v;
        } else if (const auto* s = std::get_if<std::string>(&v)) {
            it->second = parse_param(k, *s, like);
        } else if (like.index() == 2 && v.index() == 1) {
            it->second = static_cast<double>(std::get<std::int64_t>(v));
        } else {
            throw ConfigError("parameter '" + k + "': expected " + param_type_name(like) + ", got " +
                              param_type_name(v));
        }
    }
    return out;
}

namespace detail {
inline Json param_to_json(const ParamValue& v)
{
    return std::visit([](const auto& x) { return Json(x); }, v);
}
} // namespace detail

/// Runs one experiment. The report echoes every effective parameter (and the
/// seed, for seeded experiments) so its inputs block reproduces it.
[[nodiscard]] inline ExperimentReport run(const ExperimentConfig& cfg)
{
    const auto& e = find_experiment(cfg.experiment);
    const auto params = resolve_params(e, cfg.params);
    const std::uint64_t seed = cfg.seed.value_or(kDefaultSeed);

    ExperimentReport r;
    r.experiment = e.name;
    for (const auto& [k, v] : params) r.inputs[k] = detail::param_to_json(v);
    if (e.seeded) r.inputs["seed"] = seed;
    e.body(Params(params), seed, r);
    r.timestamp = utc_timestamp();
    return r;
}

/// Config that reproduces a report from its inputs block.
[[nodiscard]] inline ExperimentConfig config_from_inputs(const std::string& experiment, const Json& inputs)
{
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    for (const auto& [k, v] : inputs.items()) {
        if (k == "seed") {
            cfg.seed = v.get<std::uint64_t>();
        } else if (v.is_boolean()) {
            cfg.params[k] = v.get<bool>();
        } else if (v.is_number_integer()) {
            cfg.params[k] = v.get<std::int64_t>();
        } else if (v.is_number()) {
            cfg.params[k] = v.get<double>();
        } else if (v.is_string()) {
            cfg.params[k] = v.get<std::string>();
        } else {
            throw ConfigError("inputs: unsupported value for '" + k + "'");
        }
    }
    return cfg;
}

} // namespace mw
