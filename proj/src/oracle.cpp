#include "dyadicint/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dyadicint/error.hpp"

namespace dyadicint::oracle {

namespace {

struct Panel {
    double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

class AdaptiveSimpson {
public:
    AdaptiveSimpson(const std::function<double(double)>& f, const OracleConfig& cfg)
        : f_(f), cfg_(cfg) {}

    double run(double a, double b) {
        const double fa = eval(a);
        const double fb = eval(b);
        const double m = 0.5 * (a + b);
        const double fm = eval(m);
        const double whole = simpson(a, fa, fm, b, fb);
        // Floor for the per-panel tolerance: once a panel's change is below
        // rounding of the total it cannot be improved by splitting.
        floor_ = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(whole);
        return recurse({a, fa, m, fm, b, fb, whole}, cfg_.tol, 0);
    }

private:
    double eval(double x) const {
        const double v = f_(x);
        if (!std::isfinite(v)) {
            throw EvaluationError("oracle integrand is not finite at x=" + std::to_string(x));
        }
        return v;
    }

    double recurse(const Panel& p, double tol, int depth) {
        const double lm = 0.5 * (p.a + p.m);
        const double rm = 0.5 * (p.m + p.b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
        const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
        const double delta = left + right - p.whole;
        if (std::abs(delta) <= 15.0 * std::max(tol, floor_)) {
            return left + right + delta / 15.0;
        }
        if (depth >= cfg_.max_depth) {
            throw DepthExhausted("adaptive Simpson reached depth " + std::to_string(depth) +
                                 " on [" + std::to_string(p.a) + ", " + std::to_string(p.b) +
                                 "] without meeting tolerance");
        }
        return recurse({p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol, depth + 1) +
               recurse({p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol, depth + 1);
    }

    const std::function<double(double)>& f_;
    OracleConfig cfg_;
    double floor_ = 0.0;
};

}  // namespace

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const OracleConfig& cfg) {
    if (!(cfg.tol > 0.0)) throw DomainError("tol", "must be > 0");
    if (cfg.max_depth < 0 || cfg.max_depth > 60) throw DomainError("max_depth", "must be in [0, 60]");
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("a", "limits must be finite");
    if (a == b) return 0.0;
    if (b < a) return -adaptive_quad(f, b, a, cfg);
    return AdaptiveSimpson(f, cfg).run(a, b);
}

double agm(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("x", "AGM needs positive arguments");
    for (int i = 0; i < 64; ++i) {
        const double arith = 0.5 * (x + y);
        const double geom = std::sqrt(x * y);
        const bool settled = std::abs(arith - geom) <= 1e-15 * arith;
        x = arith;
        y = geom;
        if (settled) break;
    }
    return 0.5 * (x + y);
}

double agm_complete_elliptic(double h) {
    if (!(h >= 0.0) || !(h < 1.0)) throw DomainError("h", "must lie in [0, 1)");
    return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(1.0 - h)));
}

}  // namespace dyadicint::oracle
