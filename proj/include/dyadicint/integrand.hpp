#pragma once

#include <concepts>
#include <functional>
#include <string>
#include <utility>

namespace dyadicint {

/// A real function of one variable plus a human-readable label. Callables
/// used with a multi-threaded engine must be safe to invoke concurrently.
class Integrand {
public:
    using Function = std::function<double(double)>;

    Integrand() = default;

    template <class F>
        requires std::invocable<const F&, double> && (!std::same_as<std::decay_t<F>, Integrand>)
    Integrand(F&& fn, std::string label = {})  // NOLINT(google-explicit-constructor)
        : fn_(std::forward<F>(fn)), label_(std::move(label)) {}

    double operator()(double x) const { return fn_(x); }
    explicit operator bool() const noexcept { return static_cast<bool>(fn_); }

    const std::string& label() const noexcept { return label_; }
    /// Free-form note (e.g. "log singularity at 0"); documentation only.
    const std::string& smoothness() const noexcept { return smoothness_; }
    Integrand& with_smoothness(std::string note) {
        smoothness_ = std::move(note);
        return *this;
    }

private:
    Function fn_;
    std::string label_;
    std::string smoothness_;
};

class Integrand2D {
public:
    using Function = std::function<double(double, double)>;

    Integrand2D() = default;

    template <class F>
        requires std::invocable<const F&, double, double> &&
                 (!std::same_as<std::decay_t<F>, Integrand2D>)
    Integrand2D(F&& fn, std::string label = {})  // NOLINT(google-explicit-constructor)
        : fn_(std::forward<F>(fn)), label_(std::move(label)) {}

    double operator()(double x, double y) const { return fn_(x, y); }
    explicit operator bool() const noexcept { return static_cast<bool>(fn_); }
    const std::string& label() const noexcept { return label_; }

private:
    Function fn_;
    std::string label_;
};

}  // namespace dyadicint
