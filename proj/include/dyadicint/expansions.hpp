#pragma once

#include <cstdint>
#include <vector>

#include "dyadicint/integrand.hpp"

namespace dyadicint {

struct AdvanceRequest {
    double f_at_x = 0.0;
    Integrand derivative;
    double x = 0.0;
    double step = 0.0;  // h > 0
    int levels = 16;
};

/// f(x + h) from f(x) and samples of f' only:
/// f(x) + sum_{k >= -floor(log2 h)} 2^-k sum_{n=1}^{floor(2^k h)} (-1)^(n+1) f'(x + n/2^k).
double advance(const AdvanceRequest& r);

/// Truncation of the same series taken over one full period T of f. The
/// infinite series is exactly zero; the finite value is a diagnostic.
double periodic_residual(const Integrand& derivative, double period, double x, int levels);

struct UnitExpansionRequest {
    double x = 1.0;  // in (0, 1]
    int shift = 0;   // s
    int levels = 16;
};

struct ExpansionTerm {
    int k = 0;
    std::int64_t n = 0;
    double value = 0.0;
};

/// Level index clamp for x close to 1, where ln(1/x) -> 0.
inline constexpr int kMaxUnitLeadingLevel = 60;

/// |s| beyond this leaves every summand as 0 or overflowing.
inline constexpr int kMaxUnitShift = 64;

/// 1 + sum_k sum_{n=1}^{floor(2^k ln(1/x))} (-1)^n 2^-(k-s) e^(-n / 2^(k-s)),
/// which converges to x^(2^s). Level limits do not depend on s; only the
/// scale inside each summand moves.
double unit_exponential_expansion(const UnitExpansionRequest& r);

/// The (k, n, summand) table behind unit_exponential_expansion, in
/// summation order.
std::vector<ExpansionTerm> unit_exponential_terms(const UnitExpansionRequest& r);

}  // namespace dyadicint
