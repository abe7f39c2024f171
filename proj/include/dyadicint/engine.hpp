#pragma once

// Definite integrals as truncated double series over dyadic rationals:
//
//   int_a^b f = sum_{k >= k0} 2^-k sum_n (-1)^(n+1) f(n / 2^k)
//
// Level k samples the grid of spacing 2^-k. Every entry point keeps
// levels k0 .. k0 + P, where k0 = -floor(log2(length)).

#include <cstdint>
#include <optional>
#include <vector>

#include "dyadicint/error.hpp"
#include "dyadicint/integrand.hpp"

namespace dyadicint {

/// Hard cap on P; 2^40 nodes per level is already far past any sane request.
inline constexpr int kMaxLevels = 40;
inline constexpr int kDefaultLevels = 16;

enum class Form { direct, shifted, inverse };

const char* to_string(Form form) noexcept;

struct LevelContribution {
    int k = 0;
    double contribution = 0.0;  // 2^-k times the level's alternating sum
};

struct QuadratureResult {
    double value = 0.0;
    std::vector<LevelContribution> levels;
    std::uint64_t evaluations = 0;  // integrand calls at dyadic nodes
    std::optional<double> bound;    // set when EngineOptions::max_derivative is known
    bool converged_early = false;
};

struct EngineOptions {
    /// Worker threads per level; 0 picks hardware concurrency. Results are
    /// bit-identical for every thread count.
    unsigned threads = 1;
    /// Stop once three consecutive level contributions fall below
    /// 2^-52 * |running total|.
    bool early_stop = false;
    /// max |f'| on the interval, if known; fills QuadratureResult::bound.
    std::optional<double> max_derivative;
};

/// sum_{n=floor(2^k a)+1}^{floor(2^k b)} (-1)^(n+1) f(n / 2^k).
double level_sum(const Integrand& f, double a, double b, int k, const EngineOptions& opts = {});

/// Direct form, 0 <= a <= b, k0 = -floor(log2 b).
QuadratureResult integrate_direct(const Integrand& f, double a, double b, int levels,
                                  const EngineOptions& opts = {});

/// Shifted form over any a <= b: nodes a + n / 2^k, k0 = -floor(log2(b - a)).
QuadratureResult integrate(const Integrand& f, double a, double b, int levels,
                           const EngineOptions& opts = {});

/// Same series as integrate(), but each level evaluates only its odd nodes.
/// Even nodes of level k are exactly the nodes of level k - 1, so with
/// A_k the plain sum over level k, the alternating sum is O_k - A_(k-1) and
/// A_k = O_k + A_(k-1).
QuadratureResult integrate_incremental(const Integrand& f, double a, double b, int levels,
                                       const EngineOptions& opts = {});

/// Inverse form: b f(b) - a f(a) + sum 2^-k sum (-1)^n f_inv(n / 2^k) over
/// [f(a), f(b)]. Needs f strictly monotone with f(b) > f(a) >= 0; a and b may
/// come in either order.
QuadratureResult integrate_inverse(const Integrand& f, const Integrand& f_inv, double a,
                                   double b, int levels, const EngineOptions& opts = {});

/// Double series over [a,b] x [c,d] (both in the non-negative quadrant).
/// levels[i].k indexes the x scale; each entry sums over every y scale.
QuadratureResult integrate_2d(const Integrand2D& f, double a, double b, double c, double d,
                              int levels_x, int levels_y, const EngineOptions& opts = {});

struct ErrorBoundInput {
    double max_derivative = 0.0;  // M1 = max |f'| on [a, b]
    double a = 0.0;
    double b = 0.0;
    int levels = 0;
};

/// Rectangle-method bound M1 (b-a)^2 / (2 floor((b-a) 2^(-floor(log2(b-a)) + P))).
double error_bound(const ErrorBoundInput& in);

/// -floor(log2 length) for length > 0.
int leading_level(double length);

}  // namespace dyadicint
