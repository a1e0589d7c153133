#pragma once

#include "rfmr/integrator.hpp"

namespace rfmr {

struct FormationState {
    Vector thetas;       // agent angles, radians; ordered at t = 0
    double radius = 1.0; // only used for planar position output
    double v = 0.0;      // common angular-velocity offset
};

/// Normalized neighbor gaps: x_1 = (theta_1 - theta_n + 2pi)/(2pi),
/// x_k = (theta_k - theta_{k-1})/(2pi). Sums to 1 by construction.
Vector gaps_from_angles(const Vector& thetas);

/// u_k = x_k (x_{k+1} - 1) + v; depends on theta_{k-1}, theta_k, theta_{k+1}.
Vector control_law(const Vector& thetas, double v = 0.0);

struct BalanceVerdict {
    double max_gap_error = 0.0;   // max_i |2pi x_i - 2pi/n| at T_end
    bool order_preserved = true;  // gaps stayed in [0, 1] throughout
    Vector terminal_thetas;
    Vector terminal_rates;        // theta-dot at T_end
};

struct FormationRun {
    std::vector<double> times;
    std::vector<Vector> thetas;  // unwrapped angles
    BalanceVerdict verdict;
};

/// Integrate theta-dot = u directly in (unwrapped) angle space. The induced
/// gaps follow the homogeneous ring dynamics with lambda_c = 1/(2pi).
FormationRun simulate_formation(const FormationState& initial, const IntegrationConfig& cfg);

}  // namespace rfmr
