#pragma once

#include "rfmr/integrator.hpp"

#include <complex>
#include <optional>

namespace rfmr {

class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EquilibriumPoint {
    Vector e;            // equilibrium state
    double s = 0.0;      // level-set value sum(e)
    double r = 0.0;      // common steady-state edge flux
    double residual = 0.0;
    int iterations = 0;
};

/// Unique equilibrium on the level set {x in C^n : sum(x) = s} for constant
/// rates. Warm start by integration (or the caller-provided guess), then
/// damped Newton on the flux-equality system. s in {0, n} returns the corner
/// fixed points directly.
EquilibriumPoint solve_equilibrium(const RateSchedule& rates, double s, double tol = 1e-12,
                                   const std::optional<Vector>& guess = std::nullopt);

/// True iff every coordinate of the level-s equilibrium lies strictly below
/// the level-p one (requires s < p).
bool equilibrium_ordering_check(const RateSchedule& rates, double s, double p,
                                double tol = 1e-9);

struct Riccati2Params {
    double alpha2, alpha1, alpha0;
    double delta;  // alpha1^2 - 4 alpha2 alpha0, positive for positive rates
    double t0;     // integration constant (unequal rates only)
    double s;      // conserved sum
};

Riccati2Params riccati2_params(double x1_0, double s, double lambda1, double lambda2);

/// Exact n=2 solution: linear form for equal rates, Riccati/coth form
/// otherwise. The corners 0_2 and 1_2 are excluded.
Vector closed_form_n2(const Vector& a, double lambda1, double lambda2, double t);

/// Analytic L1 distance between the two n=2 solutions started at a and b on
/// the same level set.
double pair_distance_n2(const Vector& a, const Vector& b, double lambda1, double lambda2,
                        double t);

struct HrfmrLinearization {
    Matrix q;
    Eigen::VectorXcd eigenvalues;  // circulant formula, index l = 1..n maps to [l-1]
};

/// Linearization of the homogeneous ring around c*1_n and its spectrum
/// lambda_l = -1 + c w^(l-1) + (1-c) w^((l-1)(n-1)), w = exp(2 pi i / n).
HrfmrLinearization hrfmr_linearization(int n, double c);

/// cos(2 pi (n-1)/n) - 1: the dominant nonzero real part, bounding the local
/// consensus convergence rate.
double linearized_rate(int n);

/// L1-induced matrix measure: max over columns of (diagonal + sum of
/// absolute off-diagonals).
double l1_matrix_measure(const Matrix& m);

}  // namespace rfmr
