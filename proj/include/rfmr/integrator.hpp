#pragma once

#include "rfmr/model.hpp"

#include <functional>
#include <vector>

namespace rfmr {

enum class Method { Rk4Fixed, Rk45Adaptive };

struct IntegrationConfig {
    Method method = Method::Rk45Adaptive;
    double step = 1e-3;   // fixed-step size (Rk4Fixed)
    double rtol = 1e-9;
    double atol = 1e-12;
    double t_start = 0.0;
    double t_end = 10.0;
    double sample_dt = 0.0;  // 0 -> (t_end - t_start) / 500
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;

    double conservation_drift() const;
    const Vector& terminal() const { return states.back(); }
};

class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& what, Trajectory partial)
        : std::runtime_error(what), partial(std::move(partial)) {}
    Trajectory partial;
};

using OdeField = std::function<Vector(double, const Vector&)>;

/// Generic driver: integrate dy/dt = f(t, y) over [t_start, t_end], sampling
/// every sample_dt. No state-space policy is applied.
Trajectory integrate_ode(const Vector& y0, const OdeField& f, const IntegrationConfig& cfg);

/// Integrate the ring dynamics from a over [t_start, t_end], sampling every
/// sample_dt. Sampled states are clamped onto the cube and conservation
/// drift above 1e-9*n aborts the run.
Trajectory integrate(const Vector& a, const RateSchedule& rates, const IntegrationConfig& cfg);

struct SettleResult {
    Vector state;
    double elapsed = 0.0;
    bool settled = false;
    double field_norm = 0.0;  // sup-norm of the vector field at `state`
};

/// Run the autonomous dynamics until the sup-norm of the vector field drops
/// below settle_tol; cfg.t_end bounds the search. A timeout returns the
/// best-so-far state with settled = false.
SettleResult integrate_to_equilibrium(const Vector& a, const RateSchedule& rates,
                                      const IntegrationConfig& cfg, double settle_tol = 1e-10);

}  // namespace rfmr
