#include "dyadicint/dyadic.hpp"

#include <cmath>
#include <string>

#include "dyadicint/error.hpp"
#include "dyadicint/summation.hpp"

namespace dyadicint {

namespace {

constexpr double kTwo53 = 9007199254740992.0;

void check_radix(int radix) {
    if (radix < 2) throw DomainError("p", "radix must be >= 2, got " + std::to_string(radix));
}

// p^m for m >= 0 by repeated multiplication; exact while the product stays
// below 2^53.
double integer_power(int radix, int m) {
    double r = 1.0;
    const double p = radix;
    for (int i = 0; i < m; ++i) r *= p;
    return r;
}

}  // namespace

double radix_power(int radix, int k) {
    check_radix(radix);
    if (radix == 2) {
        if (k > 1023 || k < -1074) {
            throw RangeError("k", "2^" + std::to_string(k) + " is outside the binary exponent range");
        }
        return std::ldexp(1.0, k);
    }
    if (k > kMaxRadixScale || k < -kMaxRadixScale) {
        throw RangeError("k", "|k| must be <= " + std::to_string(kMaxRadixScale));
    }
    const double pos = integer_power(radix, k < 0 ? -k : k);
    const double r = k < 0 ? 1.0 / pos : pos;
    if (!std::isfinite(r) || r == 0.0 || !std::isnormal(r)) {
        throw RangeError("k", std::to_string(radix) + "^" + std::to_string(k) +
                                  " is not representable");
    }
    return r;
}

int floor_log(int radix, double x) {
    check_radix(radix);
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("x", "floor_log needs a finite positive argument");
    }
    if (radix == 2) return std::ilogb(x);

    int k = 0;
    if (x >= 1.0) {
        double next = static_cast<double>(radix);
        while (next <= x) {
            ++k;
            next = radix_power(radix, k + 1);
        }
    } else {
        while (radix_power(radix, k) > x) --k;
    }
    return k;
}

int digit(const RadixDigitQuery& q) {
    check_radix(q.radix);
    if (std::isnan(q.x) || q.x < 0.0) throw DomainError("x", "digit needs x >= 0");
    if (!std::isfinite(q.x)) throw DomainError("x", "digit needs a finite x");
    if (q.x == 0.0) return 0;

    const int p = q.radix;
    const int k = q.scale;

    if (p == 2) {
        const int lead = std::ilogb(q.x);
        if (k > lead) return 0;
        const int lowest = lead - 52 < -1074 ? -1074 : lead - 52;
        if (k < lowest) return 0;
        // x / 2^k is exact and below 2^54, so floor and parity are exact.
        const double scaled = std::floor(std::ldexp(q.x, -k));
        return static_cast<int>(std::fmod(scaled, 2.0));
    }

    if (k > floor_log(p, q.x)) return 0;
    // Below the 53-bit significand every digit is rounding noise.
    if (radix_power(p, k > -kMaxRadixScale ? k : -kMaxRadixScale) < q.x * 0x1p-52) return 0;

    // floor(x/p^(k+1)) == floor(floor(x/p^k)/p), so the digit is the residue
    // of a single floor and always lands in [0, p-1].
    const double scaled = k >= 0 ? q.x / radix_power(p, k) : q.x * integer_power(p, -k);
    const double whole = std::floor(scaled);
    if (!std::isfinite(whole) || whole >= kTwo53 * p) {
        throw RangeError("k", "x / p^k exceeds exact integer range");
    }
    return static_cast<int>(std::fmod(whole, static_cast<double>(p)));
}

double reconstruct(const ReconstructionRequest& r) {
    check_radix(r.radix);
    if (!std::isfinite(r.x)) throw DomainError("x", "reconstruct needs a finite x");
    if (r.x == 0.0) return 0.0;

    const double ax = std::abs(r.x);
    const int top = floor_log(r.radix, ax);
    NeumaierSum acc;
    for (int k = top; k >= r.lowest_scale; --k) {
        // Nothing below the significand contributes.
        if (r.radix == 2 ? k < top - 53
                         : (k < -kMaxRadixScale || radix_power(r.radix, k) < ax * 0x1p-52)) {
            break;
        }
        const int d = digit(r.radix, k, ax);
        if (d != 0) acc.add(d * radix_power(r.radix, k));
    }
    return std::copysign(acc.value(), r.x);
}

}  // namespace dyadicint
