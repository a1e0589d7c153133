#include "rfmr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rfmr {

namespace {

// Flux-equality system for a constant-rate equilibrium on level set s:
// rows 0..n-2 equate consecutive edge fluxes, row n-1 pins the sum.
Vector equilibrium_residual(const Vector& e, const Vector& lam, double s) {
    const Eigen::Index n = e.size();
    Vector f(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const Eigen::Index i1 = (i + 1) % n, i2 = (i + 2) % n;
        f[i] = lam[i] * e[i] * (1.0 - e[i1]) - lam[i1] * e[i1] * (1.0 - e[i2]);
    }
    f[n - 1] = e.sum() - s;
    return f;
}

Matrix equilibrium_jacobian(const Vector& e, const Vector& lam) {
    const Eigen::Index n = e.size();
    Matrix j = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const Eigen::Index i1 = (i + 1) % n, i2 = (i + 2) % n;
        j(i, i) += lam[i] * (1.0 - e[i1]);
        j(i, i1) += -lam[i] * e[i] - lam[i1] * (1.0 - e[i2]);
        j(i, i2) += lam[i1] * e[i1];
    }
    j.row(n - 1).setOnes();
    return j;
}

double coth_stable(double u) {
    // coth(u) = 1 + 2/(exp(2u) - 1), reflected for u < 0.
    if (u < 0.0) return -coth_stable(-u);
    return 1.0 + 2.0 / std::expm1(2.0 * u);
}

}  // namespace

Riccati2Params riccati2_params(double x1_0, double s, double lambda1, double lambda2) {
    Riccati2Params p;
    p.s = s;
    p.alpha2 = lambda2 - lambda1;
    p.alpha1 = (lambda1 - lambda2) * s - lambda1 - lambda2;
    p.alpha0 = s * lambda2;
    p.delta = p.alpha1 * p.alpha1 - 4.0 * p.alpha2 * p.alpha0;
    const double sq = std::sqrt(p.delta);
    const double u0 = (2.0 * x1_0 * p.alpha2 + p.alpha1) / sq;
    if (std::abs(u0) > 1.0)
        p.t0 = (2.0 / sq) * 0.5 * std::log((u0 + 1.0) / (u0 - 1.0));
    else
        p.t0 = (2.0 / sq) * std::atanh(u0);
    return p;
}

Vector closed_form_n2(const Vector& a, double lambda1, double lambda2, double t) {
    if (a.size() != 2) throw ConfigError("closed form requires n = 2");
    if (lambda1 <= 0.0 || lambda2 <= 0.0) throw ConfigError("rates must be positive");
    if (!in_cube(a)) throw ConfigError("initial state outside the unit cube");
    if ((a.array() == 0.0).all() || (a.array() == 1.0).all())
        throw ConfigError("corners 0_2 and 1_2 are excluded equilibria");
    const double s = a.sum();

    double x1;
    if (lambda1 == lambda2) {
        const double decay = std::exp(-2.0 * lambda1 * t);
        x1 = 0.5 * s * (1.0 - decay) + a[0] * decay;
    } else {
        const auto p = riccati2_params(a[0], s, lambda1, lambda2);
        const double sq = std::sqrt(p.delta);
        const double u0 = (2.0 * a[0] * p.alpha2 + p.alpha1) / sq;
        const double arg = 0.5 * sq * (t - p.t0);
        double y;
        if (std::abs(u0) > 1.0)
            y = coth_stable(arg);
        else if (std::abs(u0) < 1.0)
            y = std::tanh(arg);
        else
            y = u0;  // started exactly on an equilibrium root
        x1 = (-p.alpha1 - sq * y) / (2.0 * p.alpha2);
    }
    Vector out(2);
    out[0] = x1;
    out[1] = s - x1;
    return out;
}

double pair_distance_n2(const Vector& a, const Vector& b, double lambda1, double lambda2,
                        double t) {
    if (a.size() != 2 || b.size() != 2) throw ConfigError("pair distance requires n = 2");
    if (std::abs(a.sum() - b.sum()) > 1e-9)
        throw ConfigError("states must lie on the same level set");
    const double d0 = 2.0 * std::abs(a[0] - b[0]);
    if (d0 == 0.0) return 0.0;
    if (lambda1 == lambda2) return d0 * std::exp(-2.0 * lambda1 * t);

    const auto p = riccati2_params(a[0], a.sum(), lambda1, lambda2);
    const double sq = std::sqrt(p.delta);
    const auto q = [&](const Vector& z) {
        return ((lambda2 - lambda1) * (z[0] - z[1]) - (lambda1 + lambda2)) / sq;
    };
    const double qa = q(a), qb = q(b);
    if (sq * t > 700.0) return 0.0;  // gamma overflows; distance is numerically zero
    const double gamma = 0.25 * std::exp(sq * t) * (qa * qb + 1.0 - qa - qb) +
                         0.25 * std::exp(-sq * t) * (qa * qb + 1.0 + qa + qb) +
                         0.5 * (1.0 - qa * qb);
    return d0 / std::abs(gamma);
}

EquilibriumPoint solve_equilibrium(const RateSchedule& rates, double s, double tol,
                                   const std::optional<Vector>& guess) {
    if (!rates.is_constant()) throw ConfigError("equilibria are defined for constant rates");
    const int n = rates.size();
    if (s < 0.0 || s > static_cast<double>(n)) throw ConfigError("s must lie in [0, n]");

    EquilibriumPoint out;
    out.s = s;
    if (s == 0.0 || s == static_cast<double>(n)) {
        out.e = (s == 0.0) ? Vector::Zero(n) : Vector::Ones(n);
        out.r = 0.0;
        return out;
    }

    const Vector lam = rates.rates_at(0.0);

    // Warm start: ride the flow from the uniform state on the same level set,
    // unless the caller supplies one.
    IntegrationConfig cfg;
    cfg.t_end = 40.0 / rates.bounds().first;
    cfg.sample_dt = cfg.t_end / 400.0;
    Vector e;
    if (guess) {
        if (guess->size() != n) throw ConfigError("warm-start guess has the wrong dimension");
        // Project the guess into the cube and onto the level set, then ride
        // the flow: it converges to the unique in-cube equilibrium, so Newton
        // cannot be captured by spurious flux-equality roots outside the cube.
        e = guess->array().max(0.0).min(1.0).matrix();
        for (int k = 0; k < 50 && std::abs(e.sum() - s) > 1e-12; ++k)
            e = (e.array() + (s - e.sum()) / n).max(0.0).min(1.0).matrix();
        e = integrate_to_equilibrium(e, rates, cfg, 1e-6).state;
    } else {
        e = integrate_to_equilibrium(Vector::Constant(n, s / n), rates, cfg, 1e-6).state;
    }

    double res = equilibrium_residual(e, lam, s).lpNorm<Eigen::Infinity>();
    int iters = 0;
    for (; iters < 100 && res > tol; ++iters) {
        const Vector f = equilibrium_residual(e, lam, s);
        const Vector step = equilibrium_jacobian(e, lam).fullPivLu().solve(-f);
        double alpha = 1.0;
        bool improved = false;
        for (int k = 0; k < 30; ++k) {
            const Vector trial = e + alpha * step;
            const double trial_res =
                equilibrium_residual(trial, lam, s).lpNorm<Eigen::Infinity>();
            if (trial_res < res) {
                e = trial;
                res = trial_res;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!improved) break;
    }
    if (res > tol) {
        // Newton stalled; integrate much longer and take the settled state.
        cfg.t_end *= 25.0;
        cfg.sample_dt = cfg.t_end / 2000.0;
        auto deep = integrate_to_equilibrium(Vector::Constant(n, s / n), rates, cfg, tol);
        const double deep_res =
            equilibrium_residual(deep.state, lam, s).lpNorm<Eigen::Infinity>();
        if (deep_res < res) {
            e = deep.state;
            res = deep_res;
        }
        if (res > std::max(tol, 1e-10))
            throw NumericalError("equilibrium solve did not converge; residual " +
                                 std::to_string(res));
    }

    out.e = e;
    out.residual = res;
    out.iterations = iters;
    out.r = flow_profile(e, rates).mean();
    return out;
}

bool equilibrium_ordering_check(const RateSchedule& rates, double s, double p, double tol) {
    if (!(s < p)) throw ConfigError("ordering check requires s < p");
    const Vector es = solve_equilibrium(rates, s).e;
    const Vector ep = solve_equilibrium(rates, p).e;
    return ((ep - es).array() > tol).all();
}

HrfmrLinearization hrfmr_linearization(int n, double c) {
    if (n < 2) throw ConfigError("n must be at least 2");
    if (c < 0.0 || c > 1.0) throw ConfigError("c must lie in [0, 1]");
    HrfmrLinearization lin;
    lin.q = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        lin.q(i, i) += -1.0;
        lin.q(i, (i + 1) % n) += c;
        lin.q(i, (i + n - 1) % n) += 1.0 - c;
    }
    lin.eigenvalues.resize(n);
    const std::complex<double> w =
        std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi / n));
    for (int l = 0; l < n; ++l)
        lin.eigenvalues[l] = -1.0 + c * std::pow(w, l) + (1.0 - c) * std::pow(w, l * (n - 1));
    return lin;
}

double linearized_rate(int n) {
    if (n < 2) throw ConfigError("n must be at least 2");
    return std::cos(2.0 * std::numbers::pi * (n - 1) / n) - 1.0;
}

double l1_matrix_measure(const Matrix& m) {
    if (m.rows() != m.cols()) throw ConfigError("matrix measure requires a square matrix");
    double mu = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
        double col = m(i, i);
        for (Eigen::Index k = 0; k < m.rows(); ++k)
            if (k != i) col += std::abs(m(k, i));
        mu = std::max(mu, col);
    }
    return mu;
}

}  // namespace rfmr
