// Command-line front end: run ring-model experiments and export plot-ready
// CSV/JSON files. Exit codes: 0 success, 1 numerical failure, 2 usage or
// validation error.

#include "rfmr/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

using namespace rfmr;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

struct CommonOpts {
    std::string out_dir = ".";
    std::string config_path;
    std::string preset;
    json file_cfg = json::object();
};

void load_config(CommonOpts& common) {
    if (common.config_path.empty()) return;
    std::ifstream in(common.config_path);
    if (!in) throw ConfigError("cannot open config file: " + common.config_path);
    try {
        in >> common.file_cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
}

// Flags beat the config file; the config file beats built-in defaults.
template <typename T>
void fill(const CLI::Option* opt, const json& cfg, const char* key, T& value) {
    if (opt->count() == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

Vector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<long>(v.size()));
}

RateSchedule make_schedule(int n, const std::vector<double>& rate_flags, const json& cfg) {
    if (!rate_flags.empty()) {
        if (static_cast<int>(rate_flags.size()) != n)
            throw ConfigError("--rates must list exactly n values");
        return RateSchedule::constant(rate_flags);
    }
    if (cfg.contains("rates")) {
        const json& jr = cfg.at("rates");
        if (jr.is_array()) return RateSchedule::constant(jr.get<std::vector<double>>());
        return rates_from_json(jr);
    }
    throw ConfigError("no rates given: pass --rates, a --preset, or a --config file");
}

Vector make_state(int n, const std::vector<double>& x0_flags, const json& cfg) {
    std::vector<double> x0 = x0_flags;
    if (x0.empty() && cfg.contains("x0")) x0 = cfg.at("x0").get<std::vector<double>>();
    if (x0.empty()) throw ConfigError("no initial state given: pass --x0");
    if (static_cast<int>(x0.size()) != n) throw ConfigError("--x0 must list exactly n values");
    return clamp_to_cube(to_vector(x0));  // rejects anything outside [0,1]
}

struct IntegrationFlags {
    double tend = 10.0;
    double sample_dt = 0.0;
    double rtol = 1e-9;
    double atol = 1e-12;
    double step = 1e-3;
    std::string method = "rk45";

    CLI::Option *tend_opt, *dt_opt, *rtol_opt, *atol_opt, *step_opt, *method_opt;

    void attach(CLI::App* cmd) {
        tend_opt = cmd->add_option("--tend", tend, "integration horizon");
        dt_opt = cmd->add_option("--sample-dt", sample_dt, "output sample spacing (0 = auto)");
        rtol_opt = cmd->add_option("--rtol", rtol, "relative tolerance (adaptive)");
        atol_opt = cmd->add_option("--atol", atol, "absolute tolerance (adaptive)");
        step_opt = cmd->add_option("--step", step, "fixed step size (rk4 only)");
        method_opt = cmd->add_option("--method", method, "integrator: rk45 or rk4")
                         ->check(CLI::IsMember({"rk45", "rk4"}));
    }

    IntegrationConfig build(const json& cfg) const {
        IntegrationConfig out;
        double te = tend, dt = sample_dt, rt = rtol, at = atol, st = step;
        std::string me = method;
        fill(tend_opt, cfg, "tend", te);
        fill(dt_opt, cfg, "sample_dt", dt);
        fill(rtol_opt, cfg, "rtol", rt);
        fill(atol_opt, cfg, "atol", at);
        fill(step_opt, cfg, "step", st);
        fill(method_opt, cfg, "method", me);
        out.t_end = te;
        out.sample_dt = dt;
        out.rtol = rt;
        out.atol = at;
        out.step = st;
        out.method = me == "rk4" ? Method::Rk4Fixed : Method::Rk45Adaptive;
        return out;
    }
};

// ---- simulate -------------------------------------------------------------

int cmd_simulate(CommonOpts& common, int n, std::vector<double>& rates_f,
                 std::vector<double>& x0_f, const IntegrationFlags& iflags) {
    if (common.preset == "fig2") {
        if (n == 0) n = 2;
        if (rates_f.empty()) rates_f = {2.0, 1.0};
        if (x0_f.empty()) x0_f = {1.0, 0.0};
    } else if (common.preset == "fig3") {
        if (n == 0) n = 3;
        if (rates_f.empty()) rates_f = {2.0, 3.0, 1.0};
        if (x0_f.empty()) x0_f = {1.0, 1.0, 0.0};
    } else if (!common.preset.empty()) {
        throw ConfigError("simulate supports presets fig2 and fig3");
    }
    if (n == 0 && !rates_f.empty()) n = static_cast<int>(rates_f.size());
    if (n <= 1) throw ConfigError("need --n >= 2");

    const auto rates = make_schedule(n, rates_f, common.file_cfg);
    const Vector a = make_state(n, x0_f, common.file_cfg);
    const auto cfg = iflags.build(common.file_cfg);

    const auto traj = integrate(a, rates, cfg);

    const auto dir = prepare_out_dir(common.out_dir);
    write_trajectory_csv((dir / "trajectory.csv").string(), traj);
    write_json((dir / "trajectory.json").string(), trajectory_to_json(traj, rates, cfg));
    std::printf("simulate: n=%d t_end=%g samples=%zu drift=%.3g -> %s\n", n, cfg.t_end,
                traj.times.size(), traj.conservation_drift(), dir.c_str());
    return 0;
}

// ---- equilibrium ----------------------------------------------------------

int cmd_equilibrium(CommonOpts& common, int n, std::vector<double>& rates_f, double s,
                    const CLI::Option* s_opt, int sweep) {
    if (common.preset == "fig3") {
        if (n == 0) n = 3;
        if (rates_f.empty()) rates_f = {2.0, 3.0, 1.0};
        if (s_opt->count() == 0) s = 2.0;
    } else if (!common.preset.empty()) {
        throw ConfigError("equilibrium supports preset fig3");
    }
    if (n == 0 && !rates_f.empty()) n = static_cast<int>(rates_f.size());
    if (n <= 1) throw ConfigError("need --n >= 2");
    const auto rates = make_schedule(n, rates_f, common.file_cfg);
    if (!rates.is_constant()) throw ConfigError("equilibrium requires constant rates");
    if (s < 0.0 || s > n) throw ConfigError("--s must lie in [0, n]");

    const auto eq = solve_equilibrium(rates, s);
    const auto dir = prepare_out_dir(common.out_dir);
    write_json((dir / "equilibrium.json").string(), equilibrium_to_json(eq, rates));

    if (sweep > 0) {
        if (sweep < 2) throw ConfigError("--sweep-s needs at least 2 points");
        std::ofstream out(dir / "equilibrium_sweep.csv", std::ios::binary);
        out << "s,r";
        for (int i = 1; i <= n; ++i) out << ",x" << i;
        out << "\n";
        std::optional<Vector> guess;
        char buf[32];
        for (int k = 0; k < sweep; ++k) {
            const double sk = n * static_cast<double>(k) / (sweep - 1);
            const auto pt = solve_equilibrium(rates, sk, 1e-12, guess);
            guess = pt.e;
            std::snprintf(buf, sizeof buf, "%.17g", sk);
            out << buf;
            std::snprintf(buf, sizeof buf, "%.17g", pt.r);
            out << ',' << buf;
            for (int i = 0; i < n; ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", pt.e[i]);
                out << ',' << buf;
            }
            out << "\n";
        }
    }
    std::printf("equilibrium: n=%d s=%g r=%.6g residual=%.3g -> %s\n", n, s, eq.r, eq.residual,
                dir.c_str());
    return 0;
}

// ---- entrain --------------------------------------------------------------

RateSchedule entrain_preset_schedule(const std::string& preset) {
    if (preset == "fig5") {
        std::vector<RateComponent> c;
        c.push_back(3.0);
        c.push_back(SinusoidRate{3.0, 2.0, 1.0, 0.5});
        c.push_back(SinusoidRate{4.0, 2.0, 2.0, -pi / 2});
        return RateSchedule::periodic(std::move(c), 2.0 * pi);
    }
    if (preset == "example5") return example_periodic_schedule_n2();
    throw ConfigError("entrain supports presets fig5 and example5");
}

int cmd_entrain(CommonOpts& common, int n, std::vector<double>& rates_f,
                std::vector<double>& x0_f, double tol, int max_cycles,
                const IntegrationFlags& iflags) {
    std::optional<RateSchedule> rates;
    if (!common.preset.empty()) {
        rates = entrain_preset_schedule(common.preset);
        n = rates->size();
        if (x0_f.empty()) x0_f = common.preset == "fig5" ? std::vector<double>{0.5, 0.01, 0.9}
                                                         : std::vector<double>{0.2, 0.6};
    }
    if (n == 0 && !rates_f.empty()) n = static_cast<int>(rates_f.size());
    if (n <= 1) throw ConfigError("need --n >= 2 (or a --preset)");
    if (!rates) rates = make_schedule(n, rates_f, common.file_cfg);
    const Vector a = make_state(n, x0_f, common.file_cfg);

    const auto verdict =
        detect_entrainment(a, *rates, tol, max_cycles, 64, iflags.build(common.file_cfg));

    const auto dir = prepare_out_dir(common.out_dir);
    write_limit_cycle_csv((dir / "limit_cycle.csv").string(), verdict);
    write_json((dir / "entrainment.json").string(), entrainment_to_json(verdict));
    std::printf("entrain: n=%d %s after %d cycles, residual=%.3g -> %s\n", n,
                verdict.converged ? "converged" : "NOT converged", verdict.cycles_used,
                verdict.period_residual, dir.c_str());
    return 0;
}

// ---- consensus ------------------------------------------------------------

int cmd_consensus(CommonOpts& common, int n, std::vector<double>& x0_f, double lambda_c,
                  double eps, const IntegrationFlags& iflags) {
    if (common.preset == "fig6") {
        if (n == 0) n = 4;
        if (x0_f.empty()) x0_f = {1.0, 0.0, 0.0, 0.0};
    } else if (!common.preset.empty()) {
        throw ConfigError("consensus supports preset fig6");
    }
    if (n == 0 && !x0_f.empty()) n = static_cast<int>(x0_f.size());
    if (n <= 1) throw ConfigError("need --n >= 2");
    if (lambda_c <= 0.0) throw ConfigError("--rate must be positive");
    const Vector a = make_state(n, x0_f, common.file_cfg);

    auto cfg = iflags.build(common.file_cfg);
    if (iflags.tend_opt->count() == 0 && !common.file_cfg.contains("tend"))
        cfg.t_end = 0.0;  // let the protocol scale the horizon to the spectral gap
    const auto rep = run_consensus(a, lambda_c, cfg, eps);

    const auto dir = prepare_out_dir(common.out_dir);
    write_lyapunov_csv((dir / "lyapunov.csv").string(), rep);
    write_json((dir / "consensus.json").string(), consensus_to_json(rep, lambda_c));
    std::printf("consensus: n=%d average=%g error=%.3g settle_time=%g -> %s\n", n,
                rep.initial_average, rep.consensus_error, rep.settle_time, dir.c_str());
    return 0;
}

// ---- formation ------------------------------------------------------------

int cmd_formation(CommonOpts& common, std::vector<double>& thetas_f, double v,
                  const CLI::Option* v_opt, double radius, const IntegrationFlags& iflags) {
    if (common.preset == "fig7") {
        if (thetas_f.empty()) thetas_f = {0.9 * pi, pi, 1.1 * pi, 1.2 * pi};
        if (v_opt->count() == 0) v = 3.0 / 16.0;
    } else if (!common.preset.empty()) {
        throw ConfigError("formation supports preset fig7");
    }
    if (thetas_f.empty() && common.file_cfg.contains("thetas"))
        thetas_f = common.file_cfg.at("thetas").get<std::vector<double>>();
    if (thetas_f.size() < 2) throw ConfigError("need --thetas with at least 2 angles");

    FormationState init;
    init.thetas = to_vector(thetas_f);
    init.v = v;
    init.radius = radius;
    gaps_from_angles(init.thetas);  // validate ordering before running

    auto cfg = iflags.build(common.file_cfg);
    if (iflags.tend_opt->count() == 0 && !common.file_cfg.contains("tend")) cfg.t_end = 150.0;
    const auto run = simulate_formation(init, cfg);

    const auto dir = prepare_out_dir(common.out_dir);
    write_angles_csv((dir / "angles.csv").string(), run);
    write_positions_csv((dir / "positions.csv").string(), run, radius);
    write_json((dir / "formation.json").string(), formation_to_json(run));
    std::printf("formation: n=%zu gap_error=%.3g order_preserved=%s -> %s\n",
                static_cast<size_t>(init.thetas.size()), run.verdict.max_gap_error,
                run.verdict.order_preserved ? "yes" : "no", dir.c_str());
    return 0;
}

// ---- asep -----------------------------------------------------------------

int cmd_asep(CommonOpts& common, int n, int particles, std::vector<double>& rates_f,
             MCConfig mc) {
    if (n <= 1) throw ConfigError("need --n >= 2");
    if (particles < 0 || particles > n) throw ConfigError("--particles must lie in [0, n]");
    if (rates_f.empty() && common.file_cfg.contains("rates"))
        rates_f = common.file_cfg.at("rates").get<std::vector<double>>();
    if (rates_f.empty()) rates_f.assign(static_cast<size_t>(n), 1.0);
    if (static_cast<int>(rates_f.size()) != n)
        throw ConfigError("--rates must list exactly n values");
    mc.hop_rates = rates_f;

    const auto res = simulate_asep(LatticeState::with_particles(n, particles), mc);

    const auto dir = prepare_out_dir(common.out_dir);
    write_density_csv((dir / "density.csv").string(), res);
    json j = asep_to_json(res, mc);
    // mean-field comparison at the same filling level
    try {
        const auto eq = solve_equilibrium(RateSchedule::constant(rates_f),
                                          static_cast<double>(particles));
        j["mean_field"] = {{"e", std::vector<double>(eq.e.data(), eq.e.data() + n)},
                           {"r", eq.r}};
    } catch (const NumericalError&) {
        // leave the comparison out rather than fail the run
    }
    write_json((dir / "asep.json").string(), j);
    std::printf("asep: n=%d particles=%d flux=%.6g hops=%ld time=%.6g -> %s\n", n, particles,
                res.flux, res.hops, res.time, dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ring-model simulation and analysis toolkit"};
    app.require_subcommand(1);

    CommonOpts common;
    int n = 0;
    std::vector<double> rates_f, x0_f, thetas_f;
    double s = 0.0, tol = 1e-6, lambda_c = 1.0, v = 0.0, eps = 1e-6, radius = 1.0;
    int sweep = 0, max_cycles = 200, particles = 0;
    MCConfig mc;
    IntegrationFlags iflags_sim, iflags_ent, iflags_con, iflags_form;

    const auto add_common = [&](CLI::App* cmd, bool with_preset = true) {
        cmd->add_option("--out-dir", common.out_dir, "output directory");
        cmd->add_option("--config", common.config_path, "JSON config file (flags override)");
        if (with_preset) cmd->add_option("--preset", common.preset, "built-in scenario");
    };

    auto* sim = app.add_subcommand("simulate", "integrate the ring dynamics");
    sim->add_option("--n", n, "ring size");
    sim->add_option("--rates", rates_f, "constant per-site rates")->delimiter(',');
    sim->add_option("--x0", x0_f, "initial state in [0,1]^n")->delimiter(',');
    iflags_sim.attach(sim);
    add_common(sim);

    auto* eqc = app.add_subcommand("equilibrium", "solve for the level-set equilibrium");
    eqc->add_option("--n", n, "ring size");
    eqc->add_option("--rates", rates_f, "constant per-site rates")->delimiter(',');
    auto* s_opt = eqc->add_option("--s", s, "level-set value sum(x)");
    eqc->add_option("--sweep-s", sweep, "also emit a k-point equilibrium curve");
    add_common(eqc);

    auto* ent = app.add_subcommand("entrain", "detect entrainment to periodic rates");
    ent->add_option("--n", n, "ring size");
    ent->add_option("--rates", rates_f, "constant per-site rates")->delimiter(',');
    ent->add_option("--x0", x0_f, "initial state in [0,1]^n")->delimiter(',');
    ent->add_option("--tol", tol, "period-residual tolerance");
    ent->add_option("--max-cycles", max_cycles, "cycle budget");
    iflags_ent.attach(ent);
    add_common(ent);

    auto* con = app.add_subcommand("consensus", "homogeneous ring as consensus protocol");
    con->add_option("--n", n, "ring size");
    con->add_option("--x0", x0_f, "initial values in [0,1]^n")->delimiter(',');
    con->add_option("--rate", lambda_c, "common rate lambda_c");
    con->add_option("--eps", eps, "settle threshold on the max-min spread");
    iflags_con.attach(con);
    add_common(con);

    auto* form = app.add_subcommand("formation", "balance agents on a circle");
    form->add_option("--thetas", thetas_f, "initial angles, radians, ascending")
        ->delimiter(',');
    auto* v_opt = form->add_option("--v", v, "common angular-velocity offset");
    form->add_option("--radius", radius, "circle radius for position output");
    iflags_form.attach(form);
    add_common(form);

    auto* asep = app.add_subcommand("asep", "stochastic exclusion-process oracle");
    asep->add_option("--n", n, "lattice size");
    asep->add_option("--particles", particles, "particle count");
    asep->add_option("--rates", rates_f, "per-site hop rates")->delimiter(',');
    asep->add_option("--sweeps", mc.sweeps, "total sweeps (n events each)");
    asep->add_option("--burn-in", mc.burn_in, "sweeps discarded before averaging");
    asep->add_option("--seed", mc.seed, "RNG seed");
    add_common(asep, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        load_config(common);
        if (sim->parsed()) return cmd_simulate(common, n, rates_f, x0_f, iflags_sim);
        if (eqc->parsed()) return cmd_equilibrium(common, n, rates_f, s, s_opt, sweep);
        if (ent->parsed())
            return cmd_entrain(common, n, rates_f, x0_f, tol, max_cycles, iflags_ent);
        if (con->parsed()) return cmd_consensus(common, n, x0_f, lambda_c, eps, iflags_con);
        if (form->parsed())
            return cmd_formation(common, thetas_f, v, v_opt, radius, iflags_form);
        if (asep->parsed()) return cmd_asep(common, n, particles, rates_f, mc);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    }
    return 2;
}
