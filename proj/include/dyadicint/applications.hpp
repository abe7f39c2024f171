#pragma once

namespace dyadicint {

struct LiRequest {
    double x = 10.0;  // > 2
    int levels = 10;
};

/// Partial sum Li(x; P) of int_2^x dt / ln t, using the series' own index
/// limits: n runs over (floor(2^(k+1)), floor(2^k x)] and each summand is
/// (-1)^(n+1) / (ln n - k ln 2).
double li(const LiRequest& r);

struct EllipticRequest {
    double phi = 1.5707963267948966;  // (0, pi/2]
    double parameter = 0.0;           // h in [0, 1)
    int levels = 10;
};

/// Parameters in [1 - kEllipticParameterCap, 1) are clamped to this value.
inline constexpr double kEllipticParameterCap = 1.0 - 1e-6;

/// F(phi | h, P): truncated series for int_0^phi dtheta / sqrt(1 - h sin^2 theta).
double elliptic_f(const EllipticRequest& r);

/// Pendulum in the potential U(theta) = -U0 cos(theta), librating with
/// -U0 < E < U0 between the turning angles +-theta2.
struct PendulumParams {
    double mass = 1.0;
    double well_depth = 1.0;  // U0 > 0
    double energy = 0.0;      // E

    /// theta2 = arccos(-E / U0).
    double turning_angle() const;
    /// eta = sqrt(2 U0 / (E + U0)).
    double eta() const;
    /// Throws DomainError unless the motion is a non-degenerate libration.
    void validate() const;
};

/// Period T from the truncated series
/// sqrt(2m/(E+U0)) sum_k 2^-k sum_{n=1}^{floor(2^(k+1) theta2)}
///     (-1)^(n+1) / sqrt(1 - eta^2 sin^2(theta2/2 - n/2^(k+1))).
double pendulum_period(const PendulumParams& p, int levels);

}  // namespace dyadicint
