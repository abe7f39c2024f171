#pragma once

// Radix-p digit function, its reconstruction series and the exact power /
// logarithm helpers the quadrature engine builds on.

namespace dyadicint {

/// Validity window for |k| in general-radix powers.
inline constexpr int kMaxRadixScale = 900;

struct RadixDigitQuery {
    int radix = 2;
    int scale = 0;   // k, any sign
    double x = 0.0;  // >= 0
};

struct ReconstructionRequest {
    int radix = 2;
    double x = 0.0;
    int lowest_scale = 0;  // k_min
};

/// p^k. Exact for p = 2 (exponent scaling); for other radices the positive
/// power is an exact integer product while it stays below 2^53 and a negative
/// power is a single correctly rounded reciprocal of it.
double radix_power(int radix, int k);

/// Largest k with p^k <= x, found without taking a floating logarithm.
int floor_log(int radix, double x);

/// The k-th radix-p digit of x >= 0: floor(x/p^k) - p*floor(x/p^(k+1)).
/// Returns 0 above the leading digit and below the representable precision.
int digit(const RadixDigitQuery& q);
inline int digit(int radix, int scale, double x) { return digit({radix, scale, x}); }

/// sgn(x) * sum_{k=k_min}^{floor(log_p |x|)} p^k digit(p, k, |x|).
double reconstruct(const ReconstructionRequest& r);
inline double reconstruct(int radix, double x, int lowest_scale) {
    return reconstruct({radix, x, lowest_scale});
}

}  // namespace dyadicint
