#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <variant>
#include <vector>

namespace rfmr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// a + b*sin(omega*t + phase); positivity requires a - |b| > 0.
struct SinusoidRate {
    double offset = 1.0;
    double amplitude = 0.0;
    double omega = 1.0;
    double phase = 0.0;
};

/// Piecewise-constant over one period: value[k] on [knots[k], knots[k+1]),
/// with knots[0] = 0 and an implicit final knot at the period.
struct TableRate {
    std::vector<double> knots;
    std::vector<double> values;
};

using RateComponent = std::variant<double, SinusoidRate, TableRate>;

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Per-site transition rates, either constant or T-periodic in time.
class RateSchedule {
  public:
    static RateSchedule constant(std::vector<double> rates);
    static RateSchedule periodic(std::vector<RateComponent> components, double period);

    int size() const { return static_cast<int>(components_.size()); }
    bool is_constant() const { return period_ == 0.0; }
    double period() const { return period_; }

    double rate(int site, double t) const;
    Vector rates_at(double t) const;

    /// [delta1, delta2] such that delta1 <= lambda_i(t) <= delta2 for all i, t.
    std::pair<double, double> bounds() const { return {delta1_, delta2_}; }

    const std::vector<RateComponent>& components() const { return components_; }

  private:
    RateSchedule(std::vector<RateComponent> c, double period);

    std::vector<RateComponent> components_;
    double period_ = 0.0;
    double delta1_ = 0.0;
    double delta2_ = 0.0;
};

// Clamp round-off excursions (within eps of [0,1]) back onto the cube;
// anything farther out is a configuration error.
Vector clamp_to_cube(const Vector& x, double eps = 1e-12);

bool in_cube(const Vector& x, double slack = 0.0);

}  // namespace rfmr
