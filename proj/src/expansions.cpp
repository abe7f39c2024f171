#include "dyadicint/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "series.hpp"

namespace dyadicint {

namespace {

double shifted_series(const Integrand& g, double x, double length, int levels) {
    auto node = [&g](int k, std::int64_t n, double t) { return detail::evaluate_at(g, k, n, t); };
    return detail::run_series(node, detail::Window{x, 0.0, length}, leading_level(length), levels,
                              false, EngineOptions{})
        .value;
}

double log_inverse(double x) {
    if (!(x > 0.0) || !(x <= 1.0)) throw DomainError("x", "expansion needs 0 < x <= 1");
    return -std::log(x);
}

// Visits (k, n, (-1)^n 2^-(k-s) e^(-n / 2^(k-s))) in summation order.
template <class Visit>
void for_each_unit_term(const UnitExpansionRequest& r, Visit&& visit) {
    const double log_inv = log_inverse(r.x);
    detail::check_levels(r.levels);
    if (r.shift < -kMaxUnitShift || r.shift > kMaxUnitShift) {
        throw RangeError("s", "shift must lie in [-" + std::to_string(kMaxUnitShift) + ", " +
                                  std::to_string(kMaxUnitShift) + "]");
    }
    if (log_inv == 0.0) return;

    const int k0 = std::min(leading_level(log_inv), kMaxUnitLeadingLevel);
    for (int k = k0; k <= k0 + r.levels; ++k) {
        const std::int64_t count = detail::floor_scaled(log_inv, k, "ln(1/x)");
        const int scale = k - r.shift;
        const double weight = std::ldexp(1.0, -scale);
        for (std::int64_t n = 1; n <= count; ++n) {
            const double v = weight * std::exp(-std::ldexp(static_cast<double>(n), -scale));
            visit(ExpansionTerm{k, n, (n & 1) != 0 ? -v : v});
        }
    }
}

}  // namespace

double advance(const AdvanceRequest& r) {
    if (!std::isfinite(r.x)) throw DomainError("x", "must be finite");
    if (!std::isfinite(r.f_at_x)) throw DomainError("f(x)", "must be finite");
    if (!(r.step > 0.0) || !std::isfinite(r.step)) throw DomainError("h", "step must be > 0");
    detail::check_levels(r.levels);
    NeumaierSum total(r.f_at_x);
    total.add(shifted_series(r.derivative, r.x, r.step, r.levels));
    return total.value();
}

double periodic_residual(const Integrand& derivative, double period, double x, int levels) {
    if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("T", "period must be > 0");
    if (!std::isfinite(x)) throw DomainError("x", "must be finite");
    detail::check_levels(levels);
    return shifted_series(derivative, x, period, levels);
}

std::vector<ExpansionTerm> unit_exponential_terms(const UnitExpansionRequest& r) {
    std::vector<ExpansionTerm> terms;
    for_each_unit_term(r, [&terms](const ExpansionTerm& t) { terms.push_back(t); });
    return terms;
}

double unit_exponential_expansion(const UnitExpansionRequest& r) {
    NeumaierSum total(1.0);
    for_each_unit_term(r, [&total](const ExpansionTerm& t) { total.add(t.value); });
    return total.value();
}

}  // namespace dyadicint
