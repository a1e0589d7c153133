#include "rfmr/analysis.hpp"
#include "rfmr/entrainment.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rfmr;
using namespace rfmr::testing;

namespace {

constexpr double pi = std::numbers::pi;

// n=3 schedule with a minimal common period of 2 pi:
// lambda_1 = 3, lambda_2 = 3 + 2 sin(t + 1/2), lambda_3 = 4 - 2 cos(2t).
RateSchedule three_site_periodic() {
    std::vector<RateComponent> c;
    c.push_back(3.0);
    c.push_back(SinusoidRate{3.0, 2.0, 1.0, 0.5});
    c.push_back(SinusoidRate{4.0, 2.0, 2.0, -pi / 2});  // -2 cos(2t) = 2 sin(2t - pi/2)
    return RateSchedule::periodic(std::move(c), 2.0 * pi);
}

}  // namespace

TEST_CASE("constant rates collapse onto the equilibrium") {
    const auto rates = RateSchedule::constant({2.0, 3.0, 1.0});
    Vector a(3);
    a << 1.0, 1.0, 0.0;
    const auto verdict = detect_entrainment(a, rates, 1e-8, 200);
    REQUIRE(verdict.converged);
    const Vector e = solve_equilibrium(rates, 2.0).e;
    for (const auto& s : verdict.cycle)
        CHECK((s - e).lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("three-site periodic schedule entrains") {
    Vector a(3);
    a << 0.5, 0.01, 0.9;
    const auto verdict = detect_entrainment(a, three_site_periodic(), 1e-6, 200);
    REQUIRE(verdict.converged);
    CHECK(verdict.period_residual <= 1e-6);
    // the cycle stays inside the level set of the initial condition
    for (const auto& s : verdict.cycle)
        CHECK(std::abs(s.sum() - a.sum()) < 1e-7);
    // a genuinely oscillating limit, not a fixed point
    double swing = 0.0;
    for (const auto& s : verdict.cycle)
        swing = std::max(swing, (s - verdict.cycle.front()).lpNorm<Eigen::Infinity>());
    CHECK(swing > 1e-3);
}

TEST_CASE("limit cycle is shared across a level set") {
    Vector a(3), b(3);
    a << 0.5, 0.01, 0.9;
    b << 0.05, 0.7, 0.66;
    REQUIRE(a.sum() == doctest::Approx(b.sum()).epsilon(1e-12));
    const auto rates = three_site_periodic();
    const auto va = detect_entrainment(a, rates, 1e-7, 400);
    const auto vb = detect_entrainment(b, rates, 1e-7, 400);
    REQUIRE(va.converged);
    REQUIRE(vb.converged);
    for (size_t k = 0; k < va.cycle.size(); ++k)
        CHECK((va.cycle[k] - vb.cycle[k]).lpNorm<Eigen::Infinity>() < 1e-5);
}

TEST_CASE("tanh closed form for the n=2 example schedule") {
    Vector a(2);
    a << 0.2, 0.6;  // x_1(0) below the attracting root 0.27178 for s = 0.8
    SUBCASE("initial condition") {
        CHECK((analytic_periodic_n2(a, 0.0) - a).lpNorm<Eigen::Infinity>() < 1e-12);
    }
    SUBCASE("limit is the constant periodic solution") {
        const double s = a.sum();
        const double z = 0.5 * std::sqrt(3.0 + (s - 1.0) * (s - 1.0));
        const Vector x = analytic_periodic_n2(a, 60.0);
        CHECK(x[0] == doctest::Approx(s / 2.0 - 1.0 + z).epsilon(1e-10));
        CHECK(x[1] == doctest::Approx(s / 2.0 + 1.0 - z).epsilon(1e-10));
    }
    SUBCASE("matches numeric integration") {
        const auto rates = example_periodic_schedule_n2();
        IntegrationConfig cfg;
        cfg.rtol = 1e-11;
        cfg.atol = 1e-14;
        for (double t : {1.0, 5.0, 20.0}) {
            cfg.t_end = t;
            cfg.sample_dt = t;
            const auto traj = integrate(a, rates, cfg);
            CHECK((traj.terminal() - analytic_periodic_n2(a, t)).lpNorm<Eigen::Infinity>() <
                  1e-6);
        }
    }
    SUBCASE("initial values at or above the attracting root are rejected") {
        Vector bad(2);
        bad << 0.9, 0.1;
        CHECK_THROWS_AS(analytic_periodic_n2(bad, 1.0), ConfigError);
        bad << 0.3, 0.5;  // satisfies x1^2 < s/2 yet sits above the root
        CHECK_THROWS_AS(analytic_periodic_n2(bad, 1.0), ConfigError);
    }
}

TEST_CASE("random periodic schedules entrain") {
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 2 + rep % 4;
        std::vector<RateComponent> c;
        for (int i = 0; i < n; ++i) {
            const double offset = 1.0 + 2.0 * unif(rng);
            const double amp = 0.8 * offset * unif(rng);
            const double omega = 1.0 + static_cast<double>(rep % 3);
            c.push_back(SinusoidRate{offset, amp, omega, 2.0 * pi * unif(rng)});
        }
        const auto rates = RateSchedule::periodic(std::move(c), 2.0 * pi);
        const auto verdict = detect_entrainment(random_state(rng, n), rates, 1e-6, 200);
        CHECK(verdict.converged);
    }
}

TEST_CASE("exhausting max_cycles is a verdict, not an exception") {
    Vector a(3);
    a << 0.5, 0.01, 0.9;
    const auto verdict = detect_entrainment(a, three_site_periodic(), 1e-13, 3);
    CHECK_FALSE(verdict.converged);
    CHECK(verdict.cycles_used == 3);
    CHECK(verdict.period_residual > 1e-13);
}
