#pragma once

#include "rfmr/model.hpp"

#include <random>

namespace rfmr::testing {

inline Vector random_state(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = unif(rng);
    return x;
}

inline std::vector<double> random_rate_values(std::mt19937& rng, int n, double lo = 0.3,
                                              double hi = 4.0) {
    std::uniform_real_distribution<double> unif(lo, hi);
    std::vector<double> out(static_cast<size_t>(n));
    for (auto& v : out) v = unif(rng);
    return out;
}

inline RateSchedule random_constant_rates(std::mt19937& rng, int n) {
    return RateSchedule::constant(random_rate_values(rng, n));
}

// Independent oracle: central finite differences of the vector field.
inline Matrix fd_jacobian(const Vector& x, const RateSchedule& rates, double t,
                          double h = 1e-6) {
    const Eigen::Index n = x.size();
    Matrix j(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Vector xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        j.col(k) = (vector_field(xp, rates, t) - vector_field(xm, rates, t)) / (2.0 * h);
    }
    return j;
}

}  // namespace rfmr::testing
