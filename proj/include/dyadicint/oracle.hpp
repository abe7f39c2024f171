#pragma once

// Reference integrators for verification. Nothing here touches the dyadic
// series code.

#include <functional>

namespace dyadicint::oracle {

struct OracleConfig {
    double tol = 1e-10;   // absolute
    int max_depth = 50;   // <= 60
};

/// Adaptive Simpson with the Richardson correction (S2 + (S2 - S1) / 15).
/// Throws DepthExhausted if some panel still misses its tolerance share at
/// max_depth. Endpoint singularities are the caller's job: integrate over a
/// nudged interval, e.g. [a + 1e-12 (b - a), b - 1e-12 (b - a)].
double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const OracleConfig& cfg = {});

/// Arithmetic-geometric mean of two positive numbers.
double agm(double x, double y);

/// K(h) = pi / (2 AGM(1, sqrt(1 - h))) for 0 <= h < 1.
double agm_complete_elliptic(double h);

}  // namespace dyadicint::oracle
