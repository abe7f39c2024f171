// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dyadicint/applications.hpp"
#include "dyadicint/cli.hpp"
#include "dyadicint/dyadic.hpp"
#include "dyadicint/engine.hpp"
#include "dyadicint/error.hpp"
#include "dyadicint/expansions.hpp"
#include "dyadicint/expr.hpp"
#include "dyadicint/oracle.hpp"
#include "dyadicint/summation.hpp"

using namespace dyadicint;

namespace {

const double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

void report(const std::string& name, const std::function<Verdict()>& body) {
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::printf("%s  %-28s %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double li_oracle(double x) {
    return oracle::adaptive_quad([](double t) { return 1.0 / std::log(t); }, 2.0, x, {1e-10, 50});
}

struct Polynomial {
    std::array<double, 6> c{};
    int degree = 0;

    double operator()(double x) const {
        double s = 0.0;
        for (int i = degree; i >= 0; --i) s = s * x + c[i];
        return s;
    }
    double antiderivative(double x) const {
        double s = 0.0;
        for (int i = degree; i >= 0; --i) s = s * x + c[i] / (i + 1);
        return s * x;
    }
    double max_abs_derivative(double a, double b) const {
        double m = 0.0;
        for (int i = 0; i <= 200000; ++i) {
            const double x = a + (b - a) * i / 200000.0;
            double s = 0.0;
            for (int j = degree; j >= 1; --j) s = s * x + j * c[j];
            m = std::max(m, std::abs(s));
        }
        return m;
    }
};

std::string random_source(std::mt19937_64& rng, int depth) {
    static const std::vector<std::string> functions = {"sin", "cos", "tan", "exp", "ln", "log2",
                                                        "sqrt", "abs", "asin", "acos", "atan"};
    static const std::vector<std::string> leaves = {"x", "pi", "e", "2", "0.5", "3.25e-1", "1e3", ".75"};
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    const auto sub = [&] { return random_source(rng, depth - 1); };
    switch (pick(rng)) {
        case 0:
        case 1:
            return leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)];
        case 2: return "-" + sub();
        case 3: return sub() + "+" + sub();
        case 4: return sub() + "-" + sub();
        case 5: return sub() + "*" + sub();
        case 6: return sub() + "/" + sub();
        case 7: return sub() + "^" + sub();
        case 8:
            return functions[std::uniform_int_distribution<std::size_t>(0, functions.size() - 1)(rng)] + "(" + sub() + ")";
        default: return "(" + sub() + ")";
    }
}

Verdict monomial_exactness() {
    Verdict v;
    const auto start = Clock::now();
    const auto r = integrate([](double) { return 1.0; }, 0.0, 0.625, 6);
    const double elapsed = seconds_since(start);
    v.require(r.value == 0.625, "value " + cli::format_real(r.value));
    for (const auto& lvl : r.levels) {
        v.require(lvl.contribution == std::ldexp(double(digit(2, -lvl.k, 0.625)), -lvl.k),
                  "level " + std::to_string(lvl.k) + " is not the binary digit");
    }
    v.require(elapsed < 1e-3, "took " + fmt(elapsed * 1e3) + " ms");
    if (v.pass) v.detail = "0.625 = 0.101b exactly, " + fmt(elapsed * 1e6) + " us";
    return v;
}

Verdict closed_form_truncation() {
    Verdict v;
    double worst = 0.0;
    for (int p : {4, 8, 12}) {
        const double err = std::abs(integrate([](double t) { return t; }, 0.0, 1.0, p).value - (0.5 + std::ldexp(1.0, -p - 1)));
        worst = std::max(worst, err);
        v.require(err <= 1e-15, "P=" + std::to_string(p) + " off by " + fmt(err));
    }
    if (v.pass) v.detail = "max |I - (0.5 + 2^-(P+1))| = " + fmt(worst);
    return v;
}

Verdict li_reproduction() {
    Verdict v;
    const auto start = Clock::now();
    std::vector<double> refs;
    for (int i = 1; i <= 10; ++i) refs.push_back(li_oracle(10.0 * i));
    double previous = INFINITY;
    double worst_rel = 0.0;
    std::string devs;
    for (int p : {3, 6, 10}) {
        double worst = 0.0;
        for (int i = 1; i <= 10; ++i) {
            const double dev = std::abs(li({10.0 * i, p}) - refs[i - 1]);
            worst = std::max(worst, dev);
            if (p == 10) worst_rel = std::max(worst_rel, dev / refs[i - 1]);
        }
        v.require(worst <= previous, "max deviation grew at P=" + std::to_string(p));
        devs += (devs.empty() ? "" : " -> ") + fmt(worst);
        previous = worst;
    }
    v.require(worst_rel <= 0.02, "relative error " + fmt(worst_rel) + " at P=10");
    const double elapsed = seconds_since(start);
    v.require(elapsed < 5.0, "took " + fmt(elapsed) + " s");
    if (v.pass) v.detail = "rel err " + fmt(worst_rel) + ", max dev " + devs + ", " + fmt(elapsed) + " s";
    return v;
}

Verdict elliptic_reproduction() {
    Verdict v;
    const auto start = Clock::now();
    double worst = 0.0;
    for (int i = 0; i <= 9; ++i) {
        const double h = 0.1 * i;
        const double ref = oracle::agm_complete_elliptic(h);
        const double rel = std::abs(elliptic_f({kPi / 2, h, 10}) - ref) / ref;
        worst = std::max(worst, rel);
        v.require(rel <= 1e-2, "pi/2, h=" + fmt(h) + ": rel " + fmt(rel));
        for (double phi : {kPi / 4, kPi / 3}) {
            const double quad = oracle::adaptive_quad(
                [h](double t) { return 1.0 / std::sqrt(1.0 - h * std::sin(t) * std::sin(t)); }, 0.0, phi, {1e-10, 50});
            const double rel_phi = std::abs(elliptic_f({phi, h, 10}) - quad) / quad;
            worst = std::max(worst, rel_phi);
            v.require(rel_phi <= 1e-2, "phi=" + fmt(phi) + ", h=" + fmt(h) + ": rel " + fmt(rel_phi));
        }
    }
    const double elapsed = seconds_since(start);
    v.require(elapsed < 5.0, "took " + fmt(elapsed) + " s");
    if (v.pass) v.detail = "worst rel err " + fmt(worst) + ", " + fmt(elapsed) + " s";
    return v;
}

Verdict gaussian_constant() {
    Verdict v;
    const auto f = [](double y) { return std::sqrt(std::log(1.0 / y)); };
    const double target = std::sqrt(kPi) / 2.0;
    const double e8 = std::abs(integrate_direct(f, 0.0, 1.0, 8).value - target);
    const double e16 = std::abs(integrate_direct(f, 0.0, 1.0, 16).value - target);
    v.require(e16 <= 1e-2, "P=16 error " + fmt(e16));
    v.require(e16 < e8, "error did not decrease from P=8 to P=16");
    if (v.pass) v.detail = "error " + fmt(e8) + " (P=8) -> " + fmt(e16) + " (P=16)";
    return v;
}

Verdict pendulum() {
    Verdict v;
    const double ratio = pendulum_period({1.0, 1.0, -1.0 + 1e-4}, 14) / (2.0 * kPi);
    v.require(ratio >= 0.99 && ratio <= 1.01, "small-amplitude ratio " + cli::format_real(ratio));
    double previous = -INFINITY;
    for (int i = 0; i < 10; ++i) {
        const double e = -0.95 + 0.2 * i;
        const double t = pendulum_period({1.0, 1.0, e}, 14);
        v.require(t > previous, "T not increasing at E=" + fmt(e));
        previous = t;
    }
    for (double e : {1.0, 1.5}) {
        bool rejected = false;
        try {
            pendulum_period({1.0, 1.0, e}, 14);
        } catch (const DomainError&) {
            rejected = true;
        }
        v.require(rejected, "E=" + fmt(e) + " accepted");
    }
    if (v.pass) v.detail = "T/(2 pi) = " + fmt(ratio) + ", increasing over 10 energies, E >= U0 rejected";
    return v;
}

Verdict property_suites() {
    Verdict v;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), pos(0.0, 4.0);
    std::uniform_int_distribution<int> deg(0, 5);
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial p;
        p.degree = deg(rng);
        for (int i = 0; i <= p.degree; ++i) p.c[i] = coef(rng);
        double a = pos(rng), b = pos(rng);
        if (a > b) std::swap(a, b);
        const double err = std::abs(integrate(p, a, b, 18).value - (p.antiderivative(b) - p.antiderivative(a)));
        const double allowed = std::max(error_bound({p.max_abs_derivative(a, b), a, b, 18}), 1e-4);
        worst_ratio = std::max(worst_ratio, err / allowed);
        v.require(err <= allowed, "polynomial " + std::to_string(trial) + " error " + fmt(err));
    }

    const auto f = [](double t) { return std::exp(0.3 * t); };
    const auto g = [](double t) { return std::cos(t) + 2.0; };
    const double lhs = integrate([&](double t) { return 1.7 * f(t) - 0.4 * g(t); }, -0.6, 3.1, 14).value;
    const double rhs = 1.7 * integrate(f, -0.6, 3.1, 14).value - 0.4 * integrate(g, -0.6, 3.1, 14).value;
    v.require(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs), "linearity " + fmt(std::abs(lhs - rhs)));

    const Integrand lif = [](double t) { return 1.0 / std::log(t); };
    const auto naive = integrate(lif, 2.0, 10.0, 12);
    const auto fast = integrate_incremental(lif, 2.0, 10.0, 12);
    v.require(std::abs(fast.value - naive.value) <= 1e-12 * std::abs(naive.value), "incremental value differs");
    v.require(fast.evaluations < naive.evaluations, "incremental did not save evaluations");

    const double inv = integrate_inverse([](double x) { return std::exp(x); }, [](double y) { return std::log(y); }, 0.0, 2.0, 16).value;
    const double fwd = integrate([](double x) { return std::exp(x); }, 0.0, 2.0, 16).value;
    v.require(std::abs(inv - fwd) <= 1e-3, "inverse vs shifted " + fmt(std::abs(inv - fwd)));

    const auto fx = [](double x) { return std::cos(x) + 0.5; };
    const auto gy = [](double y) { return std::exp(-y); };
    const double joint = integrate_2d([&](double x, double y) { return fx(x) * gy(y); }, 0.25, 1.75, 0.5, 2.5, 12, 12).value;
    const double product = integrate_direct(fx, 0.25, 1.75, 12).value * integrate_direct(gy, 0.5, 2.5, 12).value;
    v.require(std::abs(joint - product) <= 1e-3, "separability " + fmt(std::abs(joint - product)));

    if (v.pass) {
        v.detail = "50 polys (worst err/allowed " + fmt(worst_ratio) + "), incremental " +
                   std::to_string(fast.evaluations) + " vs " + std::to_string(naive.evaluations) + " evals";
    }
    return v;
}

Verdict corollary_suites() {
    Verdict v;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> two(0.0, 2.0);
    double worst_advance = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double x = two(rng), h = two(rng);
        const double err = std::abs(advance({std::sin(x), [](double t) { return std::cos(t); }, x, h, 14}) - std::sin(x + h));
        worst_advance = std::max(worst_advance, err);
        v.require(err < 1e-3, "advance error " + fmt(err));
    }
    const double residual = std::abs(periodic_residual([](double t) { return std::cos(t); }, 2.0 * kPi, 0.0, 14));
    v.require(residual < 1e-3, "periodic residual " + fmt(residual));

    std::uniform_real_distribution<double> unit(0.05, 0.95);
    double worst_unit = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double x = unit(rng);
        const double err = std::abs(unit_exponential_expansion({x, 0, 16}) - x);
        worst_unit = std::max(worst_unit, err);
        v.require(err < 1e-3, "unit expansion error " + fmt(err));
    }

    for (int s : {-2, 1, 3}) {
        const double x = unit(rng);
        const auto base = unit_exponential_terms({x, 0, 10});
        const auto moved = unit_exponential_terms({x, s, 10});
        bool same = base.size() == moved.size();
        NeumaierSum rebuilt(1.0);
        for (std::size_t i = 0; same && i < base.size(); ++i) {
            const int scale = base[i].k - s;
            const double mag = std::ldexp(1.0, -scale) * std::exp(-std::ldexp(double(base[i].n), -scale));
            const double expected = base[i].n % 2 != 0 ? -mag : mag;
            same = moved[i].k == base[i].k && moved[i].n == base[i].n && moved[i].value == expected;
            rebuilt.add(expected);
        }
        v.require(same && unit_exponential_expansion({x, s, 10}) == rebuilt.value(),
                  "term table not bit-identical for s=" + std::to_string(s));
    }
    if (v.pass) {
        v.detail = "advance " + fmt(worst_advance) + ", residual " + fmt(residual) + ", unit " + fmt(worst_unit) +
                   ", shift table bit-exact";
    }
    return v;
}

Verdict parser() {
    Verdict v;
    const auto value = [](const std::string& s) { return expr::Expression::parse(s)(0.0); };
    v.require(value("1+2*3") == 7.0, "1+2*3");
    v.require(value("-2^2") == -4.0, "-2^2");
    v.require(value("2^3^2") == 512.0, "2^3^2");
    v.require(value("8/4/2") == 1.0, "8/4/2");
    v.require(value("10-4-3") == 3.0, "10-4-3");
    v.require(value("2^-1") == 0.5, "2^-1");
    try {
        expr::Expression::parse("2 *");
        v.require(false, "\"2 *\" parsed");
    } catch (const expr::ParseError& e) {
        v.require(e.offset() == 3 && e.expected() == "factor", "\"2 *\" error position");
    }

    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> length(0, 40), byte(0, 255);
    for (int i = 0; i < 100000; ++i) {
        std::string s;
        for (int j = length(rng); j > 0; --j) s += static_cast<char>(byte(rng));
        try {
            (void)expr::Expression::parse(s);
        } catch (const expr::ParseError&) {
        }
    }

    int round_trips = 0;
    for (int i = 0; i < 200; ++i) {
        const auto first = expr::Expression::parse(random_source(rng, 5));
        const auto second = expr::Expression::parse(first.to_string());
        if (expr::structurally_equal(*first.root(), *second.root())) ++round_trips;
    }
    v.require(round_trips == 200, std::to_string(200 - round_trips) + " round trips failed");
    if (v.pass) v.detail = "precedence vectors, 1e5 fuzz inputs, 200/200 round trips";
    return v;
}

Verdict cli_determinism() {
    Verdict v;
    const std::vector<std::vector<std::string>> invocations = {
        {"integrate", "--expr", "1", "--a", "0", "--b", "0.625", "--levels", "6"},
        {"integrate", "--expr", "x", "--a", "0", "--b", "1", "--levels", "12", "--verify"},
        {"integrate", "--expr", "sqrt(ln(1/x))", "--a", "0", "--b", "1", "--levels", "16", "--form", "direct"},
        {"integrate", "--expr", "exp(x)", "--inv-expr", "ln(x)", "--a", "0", "--b", "2", "--form", "inverse"},
        {"integrate", "--expr", "1/ln(x)", "--a", "10", "--b", "2", "--levels", "10", "--oriented"},
        {"integrate2d", "--expr", "exp(-x^2-y^2)", "--a", "0", "--b", "2", "--c", "0", "--d", "2", "--levels-x", "8", "--levels-y", "8"},
        {"li", "--grid", "10:100:10", "--levels-list", "3,6,10", "--verify", "--verify-tol", "10"},
        {"elliptic", "--phi", "0.7853981633974483,1.0471975511965979,1.5707963267948966", "--hgrid", "0:0.9:0.1", "--levels-list", "3,10", "--verify", "--verify-tol", "1"},
        {"pendulum", "--m", "1", "--u0", "1", "--esweep", "-0.95:0.85:0.2", "--levels", "14", "--verify", "--verify-tol", "1"},
        {"advance", "--deriv", "cos(x)", "--expr", "sin(x)", "--x", "0.4", "--h", "1.2", "--levels", "14", "--verify"},
        {"expand-unit", "--x", "0.7", "--s", "1", "--levels", "16", "--verify"},
        {"periodic", "--deriv", "cos(x)", "--levels", "14"},
        {"digits", "--p", "3", "--x", "0.3333333333333333", "--kmin", "-20"},
    };
    for (const auto& args : invocations) {
        std::ostringstream out1, err1, out2, err2;
        const int c1 = cli::run(args, out1, err1);
        const int c2 = cli::run(args, out2, err2);
        v.require(c1 == 0, args.front() + " exited " + std::to_string(c1) + ": " + err1.str());
        v.require(c1 == c2 && out1.str() == out2.str(), args.front() + " output differs between runs");
    }
    if (v.pass) v.detail = std::to_string(invocations.size()) + " invocations byte-identical on rerun";
    return v;
}

}  // namespace

int main() {
    report("monomial-exactness", monomial_exactness);
    report("closed-form-truncation", closed_form_truncation);
    report("li-reproduction", li_reproduction);
    report("elliptic-reproduction", elliptic_reproduction);
    report("gaussian-constant", gaussian_constant);
    report("pendulum", pendulum);
    report("property-suites", property_suites);
    report("corollary-suites", corollary_suites);
    report("parser", parser);
    report("cli-determinism", cli_determinism);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
