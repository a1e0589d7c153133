#include "rfmr/formation.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rfmr;
using namespace rfmr::testing;

namespace {
constexpr double pi = std::numbers::pi;

Vector example_angles() {
    Vector th(4);
    th << 0.9 * pi, pi, 1.1 * pi, 1.2 * pi;
    return th;
}
}  // namespace

TEST_CASE("gap map") {
    SUBCASE("balanced configuration") {
        for (int n : {2, 4, 7}) {
            Vector th(n);
            for (int k = 0; k < n; ++k) th[k] = 2.0 * pi * k / n;
            const Vector x = gaps_from_angles(th);
            CHECK((x.array() - 1.0 / n).abs().maxCoeff() < 1e-14);
        }
    }
    SUBCASE("worked four-agent case") {
        const Vector x = gaps_from_angles(example_angles());
        CHECK(x[0] == doctest::Approx(0.85).epsilon(1e-12));
        for (int k = 1; k < 4; ++k) CHECK(x[k] == doctest::Approx(0.05).epsilon(1e-12));
    }
    SUBCASE("gaps always sum to one") {
        std::mt19937 rng(97);
        std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);
        for (int rep = 0; rep < 30; ++rep) {
            const int n = 2 + rep % 6;
            std::vector<double> raw(n);
            for (auto& v : raw) v = unif(rng);
            std::sort(raw.begin(), raw.end());
            Vector th = Eigen::Map<Vector>(raw.data(), n);
            CHECK(gaps_from_angles(th).sum() == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
    SUBCASE("exact ties are admitted") {
        Vector th(3);
        th << 0.5, 0.5, 2.0;
        const Vector x = gaps_from_angles(th);
        CHECK(x[1] == 0.0);
    }
    SUBCASE("ordering violations are rejected") {
        Vector th(3);
        th << 1.0, 0.5, 2.0;
        CHECK_THROWS_AS(gaps_from_angles(th), ConfigError);
    }
}

TEST_CASE("control law") {
    SUBCASE("balanced, no offset") {
        for (int n : {3, 4, 6}) {
            Vector th(n);
            for (int k = 0; k < n; ++k) th[k] = 2.0 * pi * k / n;
            const Vector u = control_law(th, 0.0);
            const double expected = (1.0 / n) * (1.0 / n - 1.0);
            for (int k = 0; k < n; ++k) CHECK(u[k] == doctest::Approx(expected));
            CHECK((u.array() <= 0.0).all());
        }
    }
    SUBCASE("offset cancelling the asymptotic drift") {
        const int n = 4;
        Vector th(n);
        for (int k = 0; k < n; ++k) th[k] = 2.0 * pi * k / n;
        const double v = (1.0 - 1.0 / n) / n;
        CHECK(control_law(th, v).lpNorm<Eigen::Infinity>() < 1e-15);
    }
    SUBCASE("non-positive without offset") {
        std::mt19937 rng(101);
        std::uniform_real_distribution<double> unif(0.0, 2.0 * pi);
        for (int rep = 0; rep < 20; ++rep) {
            const int n = 3 + rep % 4;
            std::vector<double> raw(n);
            for (auto& v : raw) v = unif(rng);
            std::sort(raw.begin(), raw.end());
            Vector th = Eigen::Map<Vector>(raw.data(), n);
            CHECK((control_law(th, 0.0).array() <= 0.0).all());
        }
    }
}

TEST_CASE("four agents settle into the balanced stationary configuration") {
    FormationState init;
    init.thetas = example_angles();
    init.v = 3.0 / 16.0;
    IntegrationConfig cfg;
    cfg.t_end = 150.0;
    cfg.sample_dt = 0.5;
    const auto run = simulate_formation(init, cfg);
    REQUIRE(run.verdict.order_preserved);
    CHECK(run.verdict.max_gap_error < 1e-6 * 2.0 * pi);
    Vector expected(4);
    expected << 0.2768 * pi, 0.7768 * pi, 1.2768 * pi, 1.7768 * pi;
    CHECK((run.verdict.terminal_thetas - expected).lpNorm<Eigen::Infinity>() < 1e-2 * pi);
    CHECK(run.verdict.terminal_rates.lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("without the offset the ring rotates at the predicted rate") {
    FormationState init;
    init.thetas = example_angles();
    init.v = 0.0;
    IntegrationConfig cfg;
    cfg.t_end = 150.0;
    cfg.sample_dt = 0.5;
    const auto run = simulate_formation(init, cfg);
    CHECK(run.verdict.max_gap_error < 1e-6 * 2.0 * pi);
    for (int k = 0; k < 4; ++k)
        CHECK(run.verdict.terminal_rates[k] == doctest::Approx(-3.0 / 16.0).epsilon(1e-6));
}

TEST_CASE("already balanced with cancelling offset stays put") {
    const int n = 5;
    FormationState init;
    init.thetas.resize(n);
    for (int k = 0; k < n; ++k) init.thetas[k] = 2.0 * pi * k / n;
    init.v = (1.0 - 1.0 / n) / n;
    IntegrationConfig cfg;
    cfg.t_end = 10.0;
    cfg.sample_dt = 1.0;
    const auto run = simulate_formation(init, cfg);
    CHECK((run.verdict.terminal_thetas - init.thetas).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("gap trajectory follows the homogeneous ring dynamics") {
    // Independent route: integrate the ring model on the initial gaps with
    // lambda_c = 1/(2 pi) and compare against gaps of the angle trajectory.
    for (double v : {0.0, 3.0 / 16.0, -0.1}) {
        FormationState init;
        init.thetas = example_angles();
        init.v = v;
        IntegrationConfig cfg;
        cfg.t_end = 50.0;
        cfg.sample_dt = 1.0;
        cfg.rtol = 1e-11;
        cfg.atol = 1e-14;
        const auto run = simulate_formation(init, cfg);

        const auto rates =
            RateSchedule::constant(std::vector<double>(4, 1.0 / (2.0 * pi)));
        const auto ring = integrate(gaps_from_angles(init.thetas), rates, cfg);
        for (size_t k = 0; k < run.times.size(); ++k) {
            const Vector gaps = gaps_from_angles(run.thetas[k]);
            CHECK((gaps - ring.states[k]).lpNorm<Eigen::Infinity>() < 1e-8);
        }
    }
}
