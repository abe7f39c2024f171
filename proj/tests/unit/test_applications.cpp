#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "dyadicint/applications.hpp"
#include "dyadicint/engine.hpp"
#include "dyadicint/error.hpp"
#include "dyadicint/oracle.hpp"

using namespace dyadicint;

namespace {

const double kPi = std::numbers::pi;

double li_oracle(double x) {
    return oracle::adaptive_quad([](double t) { return 1.0 / std::log(t); }, 2.0, x, {1e-10, 50});
}

double period_oracle(const PendulumParams& p) {
    const double theta2 = p.turning_angle();
    const double eta = p.eta();
    const double nudge = 1e-12 * 2.0 * theta2;
    const double integral = oracle::adaptive_quad(
        [eta](double theta) {
            const double s = std::sin(0.5 * theta);
            return 1.0 / std::sqrt(1.0 - eta * eta * s * s);
        },
        -theta2 + nudge, theta2 - nudge, {1e-10, 50});
    return std::sqrt(2.0 * p.mass / (p.energy + p.well_depth)) * integral;
}

}  // namespace

TEST_CASE("li examples") {
    for (int p : {0, 5, 10}) CHECK(std::abs(li({2.0 + 1e-9, p})) < 1e-6);
    CHECK(std::abs(li({10.0, 10}) - li_oracle(10.0)) < 2e-2);
    CHECK(li_oracle(10.0) == doctest::Approx(5.12).epsilon(1e-3));
    CHECK(std::abs(li({100.0, 10}) - li_oracle(100.0)) / li_oracle(100.0) <= 0.02);
    CHECK_THROWS_AS(li({2.0, 4}), DomainError);
    CHECK_THROWS_AS(li({1.0, 4}), DomainError);
}

TEST_CASE("li agrees with the direct-form engine") {
    for (double x : {3.0, 10.0, 37.5, 100.0}) {
        const double engine = integrate_direct([](double t) { return 1.0 / std::log(t); }, 2.0, x, 12).value;
        CHECK(std::abs(li({x, 12}) - engine) < 1e-6);
    }
}

TEST_CASE("li grid: relative error and non-increasing max deviation") {
    double previous = INFINITY;
    for (int p : {3, 6, 10}) {
        double worst = 0.0;
        for (int i = 1; i <= 10; ++i) {
            const double x = 10.0 * i;
            const double ref = li_oracle(x);
            const double dev = std::abs(li({x, p}) - ref);
            worst = std::max(worst, dev);
            if (p == 10) CHECK(dev / ref <= 0.02);
        }
        CHECK(worst <= previous);
        previous = worst;
    }
}

TEST_CASE("elliptic examples") {
    CHECK(std::abs(elliptic_f({kPi / 2, 0.0, 12}) - kPi / 2) < 1e-3);
    CHECK(std::abs(elliptic_f({kPi / 2, 0.5, 12}) - 1.8541) < 1e-2);
    const double ref = oracle::adaptive_quad(
        [](double t) { return 1.0 / std::sqrt(1.0 - 0.3 * std::sin(t) * std::sin(t)); }, 0.0, kPi / 4, {1e-10, 50});
    CHECK(std::abs(elliptic_f({kPi / 4, 0.3, 12}) - ref) < 1e-2);
}

TEST_CASE("elliptic with h = 0 is the monomial series") {
    for (double phi : {0.1, 0.5, kPi / 4, kPi / 3, kPi / 2}) {
        for (int p : {0, 3, 10, 16}) {
            CHECK(elliptic_f({phi, 0.0, p}) == integrate_direct([](double) { return 1.0; }, 0.0, phi, p).value);
        }
    }
}

TEST_CASE("elliptic against AGM across h") {
    for (int i = 0; i <= 9; ++i) {
        const double h = 0.1 * i;
        const double ref = oracle::agm_complete_elliptic(h);
        CHECK(std::abs(elliptic_f({kPi / 2, h, 10}) - ref) / ref <= 1e-2);
    }
}

TEST_CASE("elliptic validation and the parameter cap") {
    CHECK_THROWS_AS(elliptic_f({kPi / 2, 1.0, 4}), DomainError);
    CHECK_THROWS_AS(elliptic_f({kPi / 2, -0.1, 4}), DomainError);
    CHECK_THROWS_AS(elliptic_f({0.0, 0.5, 4}), DomainError);
    CHECK_THROWS_AS(elliptic_f({2.0, 0.5, 4}), DomainError);
    const double near = elliptic_f({kPi / 2, 1.0 - 1e-9, 10});
    CHECK(near == elliptic_f({kPi / 2, kEllipticParameterCap, 10}));
    CHECK(std::isfinite(near));
}

TEST_CASE("pendulum derived quantities") {
    const PendulumParams p{1.0, 1.0, 0.0};
    CHECK(p.turning_angle() == doctest::Approx(kPi / 2));
    CHECK(p.eta() == doctest::Approx(std::sqrt(2.0)));
    const PendulumParams q{2.0, 3.0, -1.5};
    CHECK(q.turning_angle() == doctest::Approx(std::acos(0.5)));
    CHECK(q.eta() == doctest::Approx(2.0));
}

TEST_CASE("pendulum small-amplitude limit") {
    const PendulumParams p{1.0, 1.0, -1.0 + 1e-4};
    const double ratio = pendulum_period(p, 14) / (2.0 * kPi);
    CHECK(ratio >= 0.99);
    CHECK(ratio <= 1.01);
    const PendulumParams heavy{4.0, 1.0, -1.0 + 1e-4};
    const double heavy_ratio = pendulum_period(heavy, 14) / (2.0 * kPi * 2.0);
    CHECK(heavy_ratio >= 0.99);
    CHECK(heavy_ratio <= 1.01);
}

TEST_CASE("pendulum at E = 0 against the adaptive oracle") {
    const PendulumParams p{1.0, 1.0, 0.0};
    const double ref = period_oracle(p);
    CHECK(std::abs(pendulum_period(p, 16) - ref) / ref < 1e-2);
    // Closed form 4 K(1/2) for m = U0 = 1 at E = 0. The nudged limits cut
    // about sqrt(1e-12) off each inverse-square-root endpoint.
    CHECK(std::abs(ref - 4.0 * oracle::agm_complete_elliptic(0.5)) < 2e-5);
}

TEST_CASE("pendulum period increases with energy") {
    std::vector<double> periods;
    for (int i = 0; i < 10; ++i) {
        const double e = -0.95 + 0.2 * i;
        periods.push_back(pendulum_period({1.0, 1.0, e}, 14));
    }
    for (std::size_t i = 1; i < periods.size(); ++i) CHECK(periods[i] > periods[i - 1]);
}

TEST_CASE("pendulum scaling invariance") {
    for (double c : {0.5, 3.0, 17.0}) {
        const double base = pendulum_period({1.3, 2.0, 0.4}, 12);
        const double scaled = pendulum_period({1.3 * c, 2.0 * c, 0.4 * c}, 12);
        CHECK(std::abs(scaled - base) <= 1e-12 * base);
    }
}

TEST_CASE("pendulum rejects rotation and rest") {
    CHECK_THROWS_AS(pendulum_period({1.0, 1.0, 1.0}, 8), DomainError);
    CHECK_THROWS_AS(pendulum_period({1.0, 1.0, 2.0}, 8), DomainError);
    CHECK_THROWS_AS(pendulum_period({1.0, 1.0, -1.0}, 8), DomainError);
    CHECK_THROWS_AS(pendulum_period({1.0, 0.0, 0.0}, 8), DomainError);
    CHECK_THROWS_AS(pendulum_period({-1.0, 1.0, 0.0}, 8), DomainError);
    try {
        pendulum_period({1.0, 1.0, 1.0}, 8);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("rotation") != std::string::npos);
    }
}
