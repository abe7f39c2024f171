#pragma once

#include <cmath>
#include <span>

namespace dyadicint {

// Neumaier's variant of Kahan summation. The running carry absorbs the
// low-order bits lost when a term is larger than the partial sum, which
// happens constantly in alternating series.
class NeumaierSum {
public:
    constexpr NeumaierSum() = default;
    constexpr explicit NeumaierSum(double initial) : sum_(initial) {}

    constexpr void add(double term) noexcept {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term)) {
            carry_ += (sum_ - t) + term;
        } else {
            carry_ += (term - t) + sum_;
        }
        sum_ = t;
    }

    constexpr NeumaierSum& operator+=(double term) noexcept {
        add(term);
        return *this;
    }

    constexpr NeumaierSum& operator-=(double term) noexcept {
        add(-term);
        return *this;
    }

    constexpr double value() const noexcept { return sum_ + carry_; }
    constexpr double head() const noexcept { return sum_; }
    constexpr double carry() const noexcept { return carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

inline double compensated_sum(std::span<const double> terms) noexcept {
    NeumaierSum acc;
    for (double t : terms) acc.add(t);
    return acc.value();
}

}  // namespace dyadicint
