#include "rfmr/model.hpp"

namespace rfmr {

namespace {
void check_dims(const Vector& x, const RateSchedule& rates) {
    if (x.size() != rates.size())
        throw ConfigError("state dimension does not match rate schedule");
    if (x.size() < 2) throw ConfigError("need at least 2 sites");
}
}  // namespace

Vector vector_field(const Vector& x, const RateSchedule& rates, double t) {
    check_dims(x, rates);
    const Eigen::Index n = x.size();
    Vector flow(n);
    for (Eigen::Index i = 0; i < n; ++i)
        flow[i] = rates.rate(static_cast<int>(i), t) * x[i] * (1.0 - x[(i + 1) % n]);
    Vector dx(n);
    for (Eigen::Index i = 0; i < n; ++i) dx[i] = flow[(i + n - 1) % n] - flow[i];
    return dx;
}

double total_occupancy(const Vector& x) { return x.sum(); }

Matrix jacobian(const Vector& x, const RateSchedule& rates, double t) {
    check_dims(x, rates);
    const Eigen::Index n = x.size();
    Matrix j = Matrix::Zero(n, n);
    // Accumulate so overlapping entries (n = 2) combine correctly.
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index im = (i + n - 1) % n;
        const Eigen::Index ip = (i + 1) % n;
        const double lam_im = rates.rate(static_cast<int>(im), t);
        const double lam_i = rates.rate(static_cast<int>(i), t);
        j(i, im) += lam_im * (1.0 - x[i]);
        j(i, i) += -lam_im * x[im] - lam_i * (1.0 - x[ip]);
        j(i, ip) += lam_i * x[i];
    }
    return j;
}

Vector flow_profile(const Vector& x, const RateSchedule& rates, double t) {
    check_dims(x, rates);
    const Eigen::Index n = x.size();
    Vector flow(n);
    for (Eigen::Index i = 0; i < n; ++i)
        flow[i] = rates.rate(static_cast<int>(i), t) * x[i] * (1.0 - x[(i + 1) % n]);
    return flow;
}

}  // namespace rfmr
