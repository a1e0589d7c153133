#include "rfmr/consensus.hpp"

#include "rfmr/analysis.hpp"

#include <cmath>

namespace rfmr {

double lyapunov_spread(const Vector& x) { return x.maxCoeff() - x.minCoeff(); }

ConsensusReport run_consensus(const Vector& a, double lambda_c, IntegrationConfig cfg,
                              double eps) {
    if (lambda_c <= 0.0) throw ConfigError("lambda_c must be positive");
    const int n = static_cast<int>(a.size());
    const RateSchedule rates = RateSchedule::constant(std::vector<double>(n, lambda_c));
    if (cfg.t_end <= 0.0) cfg.t_end = 20.0 / std::abs(linearized_rate(n)) / lambda_c;

    const Trajectory traj = integrate(a, rates, cfg);

    ConsensusReport rep;
    rep.initial_average = a.mean();
    rep.terminal_state = traj.terminal();
    rep.consensus_error =
        (rep.terminal_state.array() - rep.initial_average).abs().maxCoeff();
    rep.steady_flow = lambda_c * rep.initial_average * (1.0 - rep.initial_average);
    rep.times = traj.times;
    rep.lyapunov.reserve(traj.states.size());
    for (size_t k = 0; k < traj.states.size(); ++k) {
        const double v = lyapunov_spread(traj.states[k]);
        rep.lyapunov.push_back(v);
        if (rep.settle_time < 0.0 && v <= eps) rep.settle_time = traj.times[k];
    }
    return rep;
}

std::pair<int, int> extremal_derivative_signs(const Vector& x, double lambda_c) {
    const int n = static_cast<int>(x.size());
    const RateSchedule rates = RateSchedule::constant(std::vector<double>(n, lambda_c));
    const Vector dx = vector_field(x, rates);
    Eigen::Index imax, imin;
    x.maxCoeff(&imax);
    x.minCoeff(&imin);
    const auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    return {sign(dx[imax]), sign(dx[imin])};
}

}  // namespace rfmr
