#pragma once

#include "rfmr/rates.hpp"

namespace rfmr {

/// dx_i/dt = lambda_{i-1} x_{i-1} (1 - x_i) - lambda_i x_i (1 - x_{i+1}),
/// indices modulo n. Entries sum to zero for every x and t.
Vector vector_field(const Vector& x, const RateSchedule& rates, double t = 0.0);

/// Conserved first integral H(x) = sum_i x_i.
double total_occupancy(const Vector& x);

/// Jacobian of the vector field: tridiagonal plus corner entries, every
/// column sums to zero, off-diagonal entries nonnegative on the cube.
Matrix jacobian(const Vector& x, const RateSchedule& rates, double t = 0.0);

/// Per-edge fluxes r_{i,i+1} = lambda_i x_i (1 - x_{i+1}); entry i is the
/// flow out of site i (0-based).
Vector flow_profile(const Vector& x, const RateSchedule& rates, double t = 0.0);

}  // namespace rfmr
