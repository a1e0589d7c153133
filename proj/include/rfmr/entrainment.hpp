#pragma once

#include "rfmr/integrator.hpp"

namespace rfmr {

struct PeriodicVerdict {
    bool converged = false;
    double period_residual = 0.0;  // sup over samples of |x(t+T) - x(t)|_inf
    int cycles_used = 0;
    std::vector<double> phases;    // in [0, T)
    std::vector<Vector> cycle;     // sampled limit cycle, one state per phase
};

/// Integrate over successive periods of a T-periodic schedule and compare
/// state samples one period apart until the residual drops below tol.
/// Exhausting max_cycles yields converged = false, not an error.
PeriodicVerdict detect_entrainment(const Vector& a, const RateSchedule& rates, double tol = 1e-6,
                                   int max_cycles = 200, int samples_per_period = 64,
                                   const IntegrationConfig& base = {});

/// Closed-form n=2 solution for the schedule lambda_1 = 3q/2, lambda_2 = q/2
/// with q(t) = 2 + sin(t): x_1(t) = s/2 - 1 + z*tanh(k + z*(2t + 1 - cos t)),
/// z = sqrt(3 + (s-1)^2)/2. Requires |x_1(0) + 1 - s/2| < z so that
/// k = atanh((x_1(0) + 1 - s/2)/z) exists.
Vector analytic_periodic_n2(const Vector& a, double t);

/// The schedule analytic_periodic_n2 solves, for feeding the integrator.
RateSchedule example_periodic_schedule_n2();

}  // namespace rfmr
