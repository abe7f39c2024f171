#include "dyadicint/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "series.hpp"

namespace dyadicint {

namespace {

using detail::Window;

void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(name, "must be finite");
}

double evaluate_point(const Integrand& f, double x, const char* what) {
    double v = 0.0;
    try {
        v = f(x);
    } catch (const std::exception& e) {
        throw EvaluationError(std::string(what) + ": " + e.what());
    }
    if (!std::isfinite(v)) {
        throw EvaluationError(std::string(what) + " is not finite at x=" + std::to_string(x));
    }
    return v;
}

auto plain_node(const Integrand& f) {
    return [&f](int k, std::int64_t n, double x) { return detail::evaluate_at(f, k, n, x); };
}

void attach_bound(QuadratureResult& r, const EngineOptions& opts, double a, double b, int levels) {
    if (opts.max_derivative && b > a) {
        r.bound = error_bound({*opts.max_derivative, a, b, levels});
    }
}

QuadratureResult shifted(const Integrand& f, double a, double b, int levels,
                         const EngineOptions& opts, bool incremental) {
    check_finite(a, "a");
    check_finite(b, "b");
    detail::check_levels(levels);
    if (b < a) {
        throw DomainError("b", "upper limit below lower limit; orient the interval explicitly");
    }
    if (a == b) return {};
    const double length = b - a;
    if (!std::isfinite(length)) throw RangeError("b", "b - a overflows");
    QuadratureResult r = detail::run_series(plain_node(f), Window{a, 0.0, length},
                                            leading_level(length), levels, incremental, opts);
    attach_bound(r, opts, a, b, levels);
    return r;
}

}  // namespace

const char* to_string(Form form) noexcept {
    switch (form) {
        case Form::direct: return "direct";
        case Form::shifted: return "shifted";
        case Form::inverse: return "inverse";
    }
    return "?";
}

int leading_level(double length) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw DomainError("length", "leading level needs a finite positive length");
    }
    return -std::ilogb(length);
}

double level_sum(const Integrand& f, double a, double b, int k, const EngineOptions& opts) {
    check_finite(a, "a");
    check_finite(b, "b");
    if (b < a) throw DomainError("b", "upper limit below lower limit");
    const detail::IndexRange r = detail::level_range(Window{0.0, a, b}, k);
    auto alternating = [&](std::int64_t n) {
        const double v = detail::evaluate_at(f, k, n, detail::node_abscissa(0.0, n, k));
        return (n & 1) != 0 ? v : -v;
    };
    return detail::chunked_sum(r.first, r.last, 1, alternating, opts.threads).value();
}

QuadratureResult integrate_direct(const Integrand& f, double a, double b, int levels,
                                  const EngineOptions& opts) {
    check_finite(a, "a");
    check_finite(b, "b");
    detail::check_levels(levels);
    if (a < 0.0) throw DomainError("a", "direct form needs a >= 0");
    if (b < a) throw DomainError("b", "direct form needs a <= b");
    if (a == b) return {};
    QuadratureResult r = detail::run_series(plain_node(f), Window{0.0, a, b}, leading_level(b),
                                            levels, false, opts);
    attach_bound(r, opts, a, b, levels);
    return r;
}

QuadratureResult integrate(const Integrand& f, double a, double b, int levels,
                           const EngineOptions& opts) {
    return shifted(f, a, b, levels, opts, false);
}

QuadratureResult integrate_incremental(const Integrand& f, double a, double b, int levels,
                                       const EngineOptions& opts) {
    return shifted(f, a, b, levels, opts, true);
}

QuadratureResult integrate_inverse(const Integrand& f, const Integrand& f_inv, double a,
                                   double b, int levels, const EngineOptions& opts) {
    check_finite(a, "a");
    check_finite(b, "b");
    detail::check_levels(levels);
    const double fa = evaluate_point(f, a, "f(a)");
    const double fb = evaluate_point(f, b, "f(b)");
    if (!(fb > fa)) throw DomainError("b", "inverse form needs f(b) > f(a)");
    if (fa < 0.0) throw DomainError("a", "inverse form needs f(a) >= 0");

    const double mid = 0.5 * (a + b);
    const double back = evaluate_point(f_inv, evaluate_point(f, mid, "f(m)"), "f_inv(f(m))");
    const double scale = std::max({1.0, std::abs(mid), std::abs(b - a)});
    if (std::abs(back - mid) > 1e-8 * scale) {
        throw ConfigurationError("f_inv(f(m)) = " + std::to_string(back) + " differs from m = " +
                                 std::to_string(mid) + "; the supplied inverse is inconsistent");
    }

    // (-1)^n = -(-1)^(n+1): the inverse series is minus the direct form of
    // f_inv over [f(a), f(b)].
    QuadratureResult inner = detail::run_series(plain_node(f_inv), Window{0.0, fa, fb},
                                                leading_level(fb), levels, false, opts);
    QuadratureResult r;
    r.evaluations = inner.evaluations;
    r.converged_early = inner.converged_early;
    r.levels.reserve(inner.levels.size());
    for (const auto& lvl : inner.levels) r.levels.push_back({lvl.k, -lvl.contribution});

    NeumaierSum total;
    total.add(b * fb);
    total.add(-(a * fa));
    for (const auto& lvl : r.levels) total.add(lvl.contribution);
    r.value = total.value();
    return r;
}

QuadratureResult integrate_2d(const Integrand2D& f, double a, double b, double c, double d,
                              int levels_x, int levels_y, const EngineOptions& opts) {
    for (auto [v, name] : {std::pair{a, "a"}, {b, "b"}, {c, "c"}, {d, "d"}}) check_finite(v, name);
    detail::check_levels(levels_x, "P");
    detail::check_levels(levels_y, "Q");
    if (a < 0.0) throw DomainError("a", "direct form needs a >= 0");
    if (b < a) throw DomainError("b", "direct form needs a <= b");
    if (c < 0.0) throw DomainError("c", "direct form needs c >= 0");
    if (d < c) throw DomainError("d", "direct form needs c <= d");
    if (a == b || c == d) return {};

    const Window wx{0.0, a, b};
    const Window wy{0.0, c, d};
    const int kx = leading_level(b);
    const int ky = leading_level(d);

    // For a fixed x the y series is a one-dimensional direct form; both
    // axes use the odd-node recurrence, which regroups the same series.
    EngineOptions inner_opts;
    inner_opts.threads = 1;
    auto column = [&](int k, std::int64_t n, double x) {
        const Integrand slice([&f, x](double y) { return f(x, y); }, f.label());
        try {
            return detail::run_series(plain_node(slice), wy, ky, levels_y, true, inner_opts).value;
        } catch (const EvaluationError& e) {
            throw EvaluationError(std::string(e.what()) + " (outer node k=" + std::to_string(k) +
                                  ", n=" + std::to_string(n) + ")",
                                  DyadicNode{k, n, x});
        }
    };
    const std::uint64_t per_column = detail::series_cost(wy, ky, levels_y, true);
    EngineOptions outer_opts = opts;
    outer_opts.early_stop = false;
    return detail::run_series(column, wx, kx, levels_x, true, outer_opts, per_column);
}

double error_bound(const ErrorBoundInput& in) {
    check_finite(in.a, "a");
    check_finite(in.b, "b");
    if (!(in.max_derivative >= 0.0)) throw DomainError("M1", "must be >= 0");
    if (!(in.b > in.a)) throw DomainError("b", "error bound needs b > a");
    detail::check_levels(in.levels);
    const double length = in.b - in.a;
    const double nodes = std::floor(std::ldexp(length, leading_level(length) + in.levels));
    if (nodes == 0.0) throw DomainError("P", "finest level has no nodes");
    return in.max_derivative * length * length / (2.0 * nodes);
}

}  // namespace dyadicint
