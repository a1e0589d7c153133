#include "rfmr/analysis.hpp"
#include "rfmr/consensus.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace rfmr;
using namespace rfmr::testing;

TEST_CASE("lyapunov spread") {
    CHECK(lyapunov_spread(Vector::Constant(6, 0.37)) == 0.0);
    Vector x(4);
    x << 1.0, 0.0, 0.0, 0.0;
    CHECK(lyapunov_spread(x) == 1.0);
}

TEST_CASE("uniform start is already at consensus") {
    const auto rep = run_consensus(Vector::Constant(5, 0.3), 1.2);
    CHECK(rep.consensus_error < 1e-9);
    CHECK(rep.settle_time == 0.0);
}

TEST_CASE("n=4 single-particle start") {
    Vector a(4);
    a << 1.0, 0.0, 0.0, 0.0;
    IntegrationConfig cfg;
    cfg.t_end = 25.0;
    cfg.sample_dt = 0.05;
    const auto rep = run_consensus(a, 1.0, cfg);
    CHECK(rep.initial_average == 0.25);
    CHECK(rep.consensus_error < 1e-6);
    CHECK(rep.steady_flow == doctest::Approx(1.0 * 0.25 * 0.75));

    SUBCASE("V strictly decreases until consensus") {
        for (size_t k = 1; k < rep.lyapunov.size(); ++k) {
            CHECK(rep.lyapunov[k] <= rep.lyapunov[k - 1] + 1e-10);
            if (rep.lyapunov[k - 1] > 1e-8) CHECK(rep.lyapunov[k] < rep.lyapunov[k - 1]);
        }
    }
}

TEST_CASE("random draws reach average consensus") {
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> lam(0.4, 3.0);
    for (int rep_i = 0; rep_i < 25; ++rep_i) {
        const int n = 2 + rep_i % 11;
        const Vector a = random_state(rng, n);
        IntegrationConfig cfg;
        cfg.t_end = 0.0;  // auto horizon
        const auto rep = run_consensus(a, lam(rng), cfg);
        CHECK(rep.consensus_error <= 1e-6);
        for (size_t k = 1; k < rep.lyapunov.size(); ++k)
            CHECK(rep.lyapunov[k] <= rep.lyapunov[k - 1] + 1e-10);
    }
}

TEST_CASE("terminal flow profile is uniform at the predicted level") {
    std::mt19937 rng(83);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        const int n = 3 + rep_i % 5;
        const Vector a = random_state(rng, n);
        const double lam = 1.5;
        IntegrationConfig cfg;
        cfg.t_end = 0.0;
        const auto rep = run_consensus(a, lam, cfg);
        const auto rates = RateSchedule::constant(std::vector<double>(n, lam));
        const Vector flux = flow_profile(rep.terminal_state, rates);
        for (int i = 0; i < n; ++i) CHECK(std::abs(flux[i] - rep.steady_flow) < 1e-6);
    }
}

TEST_CASE("doubling lambda_c halves the settle time") {
    Vector a(5);
    a << 0.9, 0.1, 0.4, 0.6, 0.2;
    IntegrationConfig cfg;
    cfg.t_end = 60.0;
    cfg.sample_dt = 0.002;
    const auto r1 = run_consensus(a, 0.7, cfg, 1e-6);
    const auto r2 = run_consensus(a, 1.4, cfg, 1e-6);
    REQUIRE(r1.settle_time > 0.0);
    REQUIRE(r2.settle_time > 0.0);
    CHECK(r1.settle_time / r2.settle_time == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("extremal derivative signs") {
    Vector x(3);
    x << 1.0, 0.5, 0.5;
    CHECK(extremal_derivative_signs(x, 1.0).first == -1);
    x << 0.0, 0.5, 0.5;
    CHECK(extremal_derivative_signs(x, 1.0).second == 1);
    CHECK(extremal_derivative_signs(Vector::Constant(4, 0.3), 2.0) == std::pair{0, 0});
    std::mt19937 rng(89);
    for (int rep = 0; rep < 30; ++rep) {
        const Vector y = random_state(rng, 3 + rep % 5);
        const auto [smax, smin] = extremal_derivative_signs(y, 1.0);
        CHECK(smax <= 0);
        CHECK(smin >= 0);
    }
}
