#include "rfmr/formation.hpp"

#include <cmath>
#include <numbers>

namespace rfmr {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Gap map without the ordering validation; integrator trial stages may
// wander slightly outside the admissible set.
Vector raw_gaps(const Vector& thetas) {
    const Eigen::Index n = thetas.size();
    Vector x(n);
    x[0] = (thetas[0] - thetas[n - 1] + two_pi) / two_pi;
    for (Eigen::Index k = 1; k < n; ++k) x[k] = (thetas[k] - thetas[k - 1]) / two_pi;
    return x;
}

Vector control_from_gaps(const Vector& x, double v) {
    const Eigen::Index n = x.size();
    Vector u(n);
    for (Eigen::Index k = 0; k < n; ++k) u[k] = x[k] * (x[(k + 1) % n] - 1.0) + v;
    return u;
}

}  // namespace

Vector gaps_from_angles(const Vector& thetas) {
    if (thetas.size() < 2) throw ConfigError("need at least 2 agents");
    const Vector x = raw_gaps(thetas);
    if (!in_cube(x, 1e-12))
        throw ConfigError("agent angles violate the ordering 0 <= th_1 <= ... <= th_n < 2pi");
    return clamp_to_cube(x);
}

Vector control_law(const Vector& thetas, double v) {
    return control_from_gaps(gaps_from_angles(thetas), v);
}

FormationRun simulate_formation(const FormationState& initial, const IntegrationConfig& cfg) {
    const Eigen::Index n = initial.thetas.size();
    gaps_from_angles(initial.thetas);  // validates the ordering
    const double v = initial.v;

    const auto field = [v](double, const Vector& th) -> Vector {
        return control_from_gaps(raw_gaps(th), v);
    };
    const Trajectory traj = integrate_ode(initial.thetas, field, cfg);

    FormationRun run;
    run.times = traj.times;
    run.thetas = traj.states;
    run.verdict.order_preserved = true;
    for (const auto& th : traj.states)
        if (!in_cube(raw_gaps(th), 1e-9)) run.verdict.order_preserved = false;

    const Vector gaps = gaps_from_angles(traj.terminal());
    run.verdict.max_gap_error =
        (gaps.array() * two_pi - two_pi / static_cast<double>(n)).abs().maxCoeff();
    run.verdict.terminal_thetas = traj.terminal();
    run.verdict.terminal_rates = field(traj.times.back(), traj.terminal());
    return run;
}

}  // namespace rfmr
