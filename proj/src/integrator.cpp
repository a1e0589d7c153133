#include "rfmr/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace rfmr {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

Vector dp5_step(const OdeField& f, double t, const Vector& y, double h, Vector& err) {
    const Vector k1 = f(t, y);
    const Vector k2 = f(t + c2 * h, y + h * (a21 * k1));
    const Vector k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Vector k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vector y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector k7 = f(t + h, y5);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    return y5;
}

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double rtol,
                  double atol) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = err[i] / scale;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

// Advance from (t, y) to t_target with embedded error control.
void advance_adaptive(const OdeField& f, double& t, Vector& y, double t_target, double rtol,
                      double atol, double& h, const Trajectory& partial) {
    while (t < t_target) {
        h = std::min(h, t_target - t);
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw IntegrationError("adaptive step size underflow", partial);
        Vector err;
        const Vector y_new = dp5_step(f, t, y, h, err);
        const double en = error_norm(err, y, y_new, rtol, atol);
        if (en <= 1.0) {
            t += h;
            y = y_new;
        }
        const double factor = (en > 0.0) ? 0.9 * std::pow(en, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
}

void advance_rk4(const OdeField& f, double& t, Vector& y, double t_target, double step) {
    while (t < t_target - 1e-15 * std::max(1.0, std::abs(t_target))) {
        const double h = std::min(step, t_target - t);
        const Vector k1 = f(t, y);
        const Vector k2 = f(t + h / 2, y + (h / 2) * k1);
        const Vector k3 = f(t + h / 2, y + (h / 2) * k2);
        const Vector k4 = f(t + h, y + h * k3);
        y += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
        t += h;
    }
    t = t_target;
}

// Round-off can push states a hair outside the cube; anything worse means
// the integration itself went bad.
Vector settle_onto_cube(const Vector& y, const Trajectory& partial) {
    Vector out = y;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] < -1e-9 || y[i] > 1.0 + 1e-9)
            throw IntegrationError("state left the unit cube", partial);
        out[i] = std::clamp(y[i], 0.0, 1.0);
    }
    return out;
}

}  // namespace

double Trajectory::conservation_drift() const {
    if (states.empty()) return 0.0;
    const double h0 = states.front().sum();
    double drift = 0.0;
    for (const auto& s : states) drift = std::max(drift, std::abs(s.sum() - h0));
    return drift;
}

Trajectory integrate_ode(const Vector& y0, const OdeField& f, const IntegrationConfig& cfg) {
    if (cfg.t_end <= cfg.t_start) throw ConfigError("t_end must exceed t_start");
    if (cfg.method == Method::Rk4Fixed && cfg.step <= 0.0) throw ConfigError("step must be > 0");
    if (cfg.rtol <= 0.0 || cfg.atol <= 0.0) throw ConfigError("rtol, atol must be > 0");

    const double span = cfg.t_end - cfg.t_start;
    const double sample_dt = cfg.sample_dt > 0.0 ? cfg.sample_dt : span / 500.0;

    Trajectory traj;
    Vector y = y0;
    traj.times.push_back(cfg.t_start);
    traj.states.push_back(y);

    double t = cfg.t_start;
    double h = std::min(sample_dt, 1e-2);
    const long n_samples = static_cast<long>(std::ceil(span / sample_dt - 1e-9));
    for (long k = 1; k <= n_samples; ++k) {
        const double t_target = (k == n_samples) ? cfg.t_end : cfg.t_start + k * sample_dt;
        if (cfg.method == Method::Rk45Adaptive)
            advance_adaptive(f, t, y, t_target, cfg.rtol, cfg.atol, h, traj);
        else
            advance_rk4(f, t, y, t_target, cfg.step);
        traj.times.push_back(t);
        traj.states.push_back(y);
    }
    return traj;
}

Trajectory integrate(const Vector& a, const RateSchedule& rates, const IntegrationConfig& cfg) {
    Vector y = clamp_to_cube(a);
    if (y.size() != rates.size()) throw ConfigError("state dimension does not match rates");
    const double h0 = total_occupancy(y);
    const double cons_tol = 1e-9 * static_cast<double>(y.size());

    Trajectory raw = integrate_ode(
        y, [&rates](double t, const Vector& x) { return vector_field(x, rates, t); }, cfg);

    Trajectory traj;
    traj.times = raw.times;
    traj.states.reserve(raw.states.size());
    for (const auto& s : raw.states) {
        traj.states.push_back(settle_onto_cube(s, traj));
        if (std::abs(total_occupancy(traj.states.back()) - h0) > cons_tol)
            throw IntegrationError("conservation drift exceeded tolerance", traj);
    }
    return traj;
}

SettleResult integrate_to_equilibrium(const Vector& a, const RateSchedule& rates,
                                      const IntegrationConfig& cfg, double settle_tol) {
    if (!rates.is_constant())
        throw ConfigError("equilibrium search requires a constant rate schedule");
    const Trajectory traj = integrate(a, rates, cfg);
    SettleResult best;
    best.state = traj.states.front();
    best.elapsed = traj.times.front();
    best.field_norm = vector_field(best.state, rates).lpNorm<Eigen::Infinity>();
    for (size_t k = 0; k < traj.states.size(); ++k) {
        const double fn = vector_field(traj.states[k], rates).lpNorm<Eigen::Infinity>();
        if (fn < best.field_norm) {
            best.field_norm = fn;
            best.state = traj.states[k];
            best.elapsed = traj.times[k];
        }
        if (fn <= settle_tol) {
            best.field_norm = fn;
            best.state = traj.states[k];
            best.elapsed = traj.times[k];
            best.settled = true;
            return best;
        }
    }
    best.settled = false;
    return best;
}

}  // namespace rfmr
