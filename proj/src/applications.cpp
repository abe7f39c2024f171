#include "dyadicint/applications.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "series.hpp"

namespace dyadicint {

namespace {

constexpr double kDegenerateEnergy = 1e-12;

}  // namespace

double li(const LiRequest& r) {
    if (!std::isfinite(r.x)) throw DomainError("x", "must be finite");
    if (!(r.x > 2.0)) throw DomainError("x", "Li(x) needs x > 2");
    detail::check_levels(r.levels);

    // Lower index floor(2^(k+1)) + 1 is the level range of a = 2. The node
    // n / 2^k enters only through ln(n / 2^k) = ln n - k ln 2.
    auto summand = [](int k, std::int64_t n, double) {
        return 1.0 / (std::log(static_cast<double>(n)) - k * std::numbers::ln2);
    };
    return detail::run_series(summand, detail::Window{0.0, 2.0, r.x}, leading_level(r.x),
                              r.levels, false, EngineOptions{})
        .value;
}

double elliptic_f(const EllipticRequest& r) {
    if (!(r.phi > 0.0) || !(r.phi <= std::numbers::pi / 2)) {
        throw DomainError("phi", "amplitude must lie in (0, pi/2]");
    }
    if (!(r.parameter >= 0.0) || !(r.parameter < 1.0)) {
        throw DomainError("h", "elliptic parameter must lie in [0, 1)");
    }
    detail::check_levels(r.levels);
    const double h = std::min(r.parameter, kEllipticParameterCap);

    auto summand = [h](int k, std::int64_t n, double theta) {
        const double s = std::sin(theta);
        const double v = 1.0 / std::sqrt(1.0 - h * s * s);
        if (!std::isfinite(v)) {
            throw EvaluationError("elliptic integrand is not finite", DyadicNode{k, n, theta});
        }
        return v;
    };
    return detail::run_series(summand, detail::Window{0.0, 0.0, r.phi}, leading_level(r.phi),
                              r.levels, false, EngineOptions{})
        .value;
}

double PendulumParams::turning_angle() const {
    validate();
    return std::acos(-energy / well_depth);
}

double PendulumParams::eta() const {
    validate();
    return std::sqrt(2.0 * well_depth / (energy + well_depth));
}

void PendulumParams::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("m", "mass must be > 0");
    if (!(well_depth > 0.0) || !std::isfinite(well_depth)) {
        throw DomainError("U0", "well depth must be > 0");
    }
    if (!std::isfinite(energy)) throw DomainError("E", "must be finite");
    if (energy >= well_depth - kDegenerateEnergy * well_depth) {
        throw DomainError("E", "E >= U0 is the transition from libration to rotation; "
                               "the period integral diverges");
    }
    if (energy <= -well_depth + kDegenerateEnergy * well_depth) {
        throw DomainError("E", "E <= -U0 leaves the pendulum at rest");
    }
}

double pendulum_period(const PendulumParams& p, int levels) {
    detail::check_levels(levels);
    const double theta2 = p.turning_angle();
    const double eta = p.eta();
    const double eta2 = eta * eta;
    const double prefactor = std::sqrt(2.0 * p.mass / (p.energy + p.well_depth));

    // With s = n / 2^k the radicand 1 - eta^2 sin^2(theta2/2 - s/2) equals
    // eta^2 sin(s/2) sin(theta2 - s/2), because eta sin(theta2/2) = 1. The
    // product form keeps its full relative precision next to the turning
    // points, where the difference form cancels.
    auto summand = [&](int k, std::int64_t n, double s) {
        const double half = std::ldexp(s, -1);
        const double radicand = eta2 * std::sin(half) * std::sin(theta2 - half);
        if (!(radicand > 0.0)) {
            throw EvaluationError("pendulum integrand radicand is not positive",
                                  DyadicNode{k, n, s});
        }
        return 1.0 / std::sqrt(radicand);
    };
    const double span = 2.0 * theta2;
    const double series = detail::run_series(summand, detail::Window{0.0, 0.0, span},
                                             leading_level(span), levels, false, EngineOptions{})
                              .value;
    return prefactor * series;
}

}  // namespace dyadicint
