#pragma once

#include "rfmr/integrator.hpp"

namespace rfmr {

struct ConsensusReport {
    double initial_average = 0.0;
    Vector terminal_state;
    double consensus_error = 0.0;  // max_i |x_i(T_end) - Ave(a)|
    double settle_time = -1.0;     // first sampled t with V <= eps, -1 if never
    double steady_flow = 0.0;      // lambda_c * Ave(a) * (1 - Ave(a))
    std::vector<double> times;
    std::vector<double> lyapunov;  // V = max - min along the trajectory
};

/// Max-minus-min spread; zero exactly on consensus states c*1_n.
double lyapunov_spread(const Vector& x);

/// Run the homogeneous ring (all rates lambda_c) as an average-consensus
/// protocol. cfg.t_end <= 0 picks a horizon scaled to the linearized rate.
ConsensusReport run_consensus(const Vector& a, double lambda_c, IntegrationConfig cfg = {},
                              double eps = 1e-6);

/// Derivative signs at strict extremal sites: -1/0/+1 for the entry
/// attaining the max and the entry attaining the min.
std::pair<int, int> extremal_derivative_signs(const Vector& x, double lambda_c);

}  // namespace rfmr
