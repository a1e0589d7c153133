#include "rfmr/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace rfmr {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void write_series(std::ofstream& out, const std::vector<double>& times,
                  const std::vector<Vector>& states, const std::string& time_col,
                  const std::string& col_prefix) {
    const Eigen::Index n = states.empty() ? 0 : states.front().size();
    out << time_col;
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << col_prefix << (i + 1);
    out << '\n';
    for (size_t k = 0; k < times.size(); ++k) {
        out << fmt(times[k]);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << fmt(states[k][i]);
        out << '\n';
    }
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    write_series(out, traj.times, traj.states, "t", "x");
}

void write_limit_cycle_csv(const std::string& path, const PeriodicVerdict& verdict) {
    auto out = open_out(path);
    write_series(out, verdict.phases, verdict.cycle, "phase", "x");
}

void write_lyapunov_csv(const std::string& path, const ConsensusReport& report) {
    auto out = open_out(path);
    out << "t,V\n";
    for (size_t k = 0; k < report.times.size(); ++k)
        out << fmt(report.times[k]) << ',' << fmt(report.lyapunov[k]) << '\n';
}

void write_angles_csv(const std::string& path, const FormationRun& run) {
    auto out = open_out(path);
    write_series(out, run.times, run.thetas, "t", "theta");
}

void write_positions_csv(const std::string& path, const FormationRun& run, double radius) {
    auto out = open_out(path);
    const Eigen::Index n = run.thetas.empty() ? 0 : run.thetas.front().size();
    out << 't';
    for (Eigen::Index i = 0; i < n; ++i) out << ",px" << (i + 1) << ",py" << (i + 1);
    out << '\n';
    for (size_t k = 0; k < run.times.size(); ++k) {
        out << fmt(run.times[k]);
        for (Eigen::Index i = 0; i < n; ++i)
            out << ',' << fmt(radius * std::cos(run.thetas[k][i])) << ','
                << fmt(radius * std::sin(run.thetas[k][i]));
        out << '\n';
    }
}

void write_density_csv(const std::string& path, const AsepResult& result) {
    auto out = open_out(path);
    out << "site,density\n";
    for (Eigen::Index i = 0; i < result.density.size(); ++i)
        out << (i + 1) << ',' << fmt(result.density[i]) << '\n';
}

json rates_to_json(const RateSchedule& rates) {
    json sites = json::array();
    for (const auto& c : rates.components()) {
        if (const auto* v = std::get_if<double>(&c)) {
            sites.push_back({{"kind", "constant"}, {"value", *v}});
        } else if (const auto* s = std::get_if<SinusoidRate>(&c)) {
            sites.push_back({{"kind", "sinusoid"},
                             {"offset", s->offset},
                             {"amplitude", s->amplitude},
                             {"omega", s->omega},
                             {"phase", s->phase}});
        } else {
            const auto& t = std::get<TableRate>(c);
            sites.push_back({{"kind", "table"}, {"knots", t.knots}, {"values", t.values}});
        }
    }
    return {{"kind", rates.is_constant() ? "constant" : "periodic"},
            {"period", rates.period()},
            {"sites", sites}};
}

RateSchedule rates_from_json(const json& j) {
    std::vector<RateComponent> components;
    for (const auto& site : j.at("sites")) {
        const std::string kind = site.at("kind");
        if (kind == "constant") {
            components.emplace_back(site.at("value").get<double>());
        } else if (kind == "sinusoid") {
            components.emplace_back(SinusoidRate{site.at("offset"), site.at("amplitude"),
                                                 site.at("omega"), site.at("phase")});
        } else if (kind == "table") {
            components.emplace_back(TableRate{site.at("knots").get<std::vector<double>>(),
                                              site.at("values").get<std::vector<double>>()});
        } else {
            throw ConfigError("unknown rate component kind: " + kind);
        }
    }
    if (j.value("kind", "constant") == "constant") {
        std::vector<double> values;
        for (const auto& c : components) values.push_back(std::get<double>(c));
        return RateSchedule::constant(std::move(values));
    }
    return RateSchedule::periodic(std::move(components), j.at("period").get<double>());
}

json config_to_json(const IntegrationConfig& cfg) {
    return {{"method", cfg.method == Method::Rk45Adaptive ? "rk45" : "rk4"},
            {"step", cfg.step},
            {"rtol", cfg.rtol},
            {"atol", cfg.atol},
            {"t_start", cfg.t_start},
            {"t_end", cfg.t_end},
            {"sample_dt", cfg.sample_dt}};
}

json trajectory_to_json(const Trajectory& traj, const RateSchedule& rates,
                        const IntegrationConfig& cfg) {
    json states = json::array();
    for (const auto& s : traj.states) states.push_back(to_std(s));
    return {{"times", traj.times},
            {"states", states},
            {"rates", rates_to_json(rates)},
            {"config", config_to_json(cfg)}};
}

json equilibrium_to_json(const EquilibriumPoint& eq, const RateSchedule& rates) {
    return {{"n", eq.e.size()},
            {"rates", rates_to_json(rates)},
            {"s", eq.s},
            {"e", to_std(eq.e)},
            {"r", eq.r},
            {"residual", eq.residual},
            {"iterations", eq.iterations}};
}

json consensus_to_json(const ConsensusReport& report, double lambda_c) {
    return {{"lambda_c", lambda_c},
            {"initial_average", report.initial_average},
            {"terminal_state", to_std(report.terminal_state)},
            {"consensus_error", report.consensus_error},
            {"settle_time", report.settle_time},
            {"steady_flow", report.steady_flow}};
}

json entrainment_to_json(const PeriodicVerdict& verdict) {
    return {{"converged", verdict.converged},
            {"period_residual", verdict.period_residual},
            {"cycles_used", verdict.cycles_used}};
}

json formation_to_json(const FormationRun& run) {
    return {{"max_gap_error", run.verdict.max_gap_error},
            {"order_preserved", run.verdict.order_preserved},
            {"terminal_thetas", to_std(run.verdict.terminal_thetas)},
            {"terminal_rates", to_std(run.verdict.terminal_rates)}};
}

json asep_to_json(const AsepResult& result, const MCConfig& cfg) {
    return {{"seed", cfg.seed},
            {"rng", "std::mt19937_64"},
            {"sweeps", cfg.sweeps},
            {"burn_in", cfg.burn_in},
            {"hop_rates", cfg.hop_rates},
            {"density", to_std(result.density)},
            {"flux", result.flux},
            {"hops", result.hops},
            {"time", result.time}};
}

void write_json(const std::string& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

}  // namespace rfmr
