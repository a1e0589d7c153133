#include "rfmr/entrainment.hpp"

#include <cmath>
#include <numbers>

namespace rfmr {

PeriodicVerdict detect_entrainment(const Vector& a, const RateSchedule& rates, double tol,
                                   int max_cycles, int samples_per_period,
                                   const IntegrationConfig& base) {
    if (max_cycles < 1 || samples_per_period < 2)
        throw ConfigError("need at least one cycle and two samples per period");
    // A constant schedule is T-periodic for any T; use a unit period then.
    const double period = rates.is_constant() ? 1.0 : rates.period();

    PeriodicVerdict verdict;
    verdict.phases.resize(samples_per_period);
    for (int k = 0; k < samples_per_period; ++k)
        verdict.phases[k] = period * k / samples_per_period;

    IntegrationConfig cfg = base;
    cfg.sample_dt = period / samples_per_period;

    std::vector<Vector> prev;
    Vector state = clamp_to_cube(a);
    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        cfg.t_start = cycle * period;
        cfg.t_end = (cycle + 1) * period;
        const Trajectory traj = integrate(state, rates, cfg);
        std::vector<Vector> cur(traj.states.begin(),
                                traj.states.begin() + samples_per_period);
        state = traj.terminal();
        verdict.cycles_used = cycle + 1;
        if (!prev.empty()) {
            double residual = 0.0;
            for (int k = 0; k < samples_per_period; ++k)
                residual = std::max(residual, (cur[k] - prev[k]).lpNorm<Eigen::Infinity>());
            verdict.period_residual = residual;
            if (residual <= tol) {
                verdict.converged = true;
                verdict.cycle = std::move(cur);
                return verdict;
            }
        }
        prev = std::move(cur);
    }
    verdict.converged = false;
    verdict.cycle = std::move(prev);
    return verdict;
}

RateSchedule example_periodic_schedule_n2() {
    // lambda_1 = 3 + 1.5 sin t, lambda_2 = 1 + 0.5 sin t, period 2 pi.
    std::vector<RateComponent> c;
    c.push_back(SinusoidRate{3.0, 1.5, 1.0, 0.0});
    c.push_back(SinusoidRate{1.0, 0.5, 1.0, 0.0});
    return RateSchedule::periodic(std::move(c), 2.0 * std::numbers::pi);
}

Vector analytic_periodic_n2(const Vector& a, double t) {
    if (a.size() != 2) throw ConfigError("closed form requires n = 2");
    if (!in_cube(a)) throw ConfigError("initial state outside the unit cube");
    const double s = a.sum();
    const double z = 0.5 * std::sqrt(3.0 + (s - 1.0) * (s - 1.0));
    // Exact domain of the tanh form: the initial value must lie strictly
    // between the two roots of -x^2 + (s-2)x + s/2, i.e. |x_1(0)+1-s/2| < z.
    // (The weaker x_1(0)^2 < s/2 does not guarantee this.)
    if (std::abs(a[0] + 1.0 - 0.5 * s) >= z)
        throw ConfigError("closed form requires |x_1(0) + 1 - s/2| < sqrt(3+(s-1)^2)/2");
    const double k = std::atanh((a[0] + 1.0 - 0.5 * s) / z);
    const double x1 = 0.5 * s - 1.0 + z * std::tanh(k + z * (2.0 * t + 1.0 - std::cos(t)));
    Vector out(2);
    out[0] = x1;
    out[1] = s - x1;
    return out;
}

}  // namespace rfmr
