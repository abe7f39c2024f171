#include "dyadicint/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dyadicint/applications.hpp"
#include "dyadicint/dyadic.hpp"
#include "dyadicint/engine.hpp"
#include "dyadicint/error.hpp"
#include "dyadicint/expansions.hpp"
#include "dyadicint/expr.hpp"
#include "dyadicint/oracle.hpp"

namespace dyadicint::cli {

namespace {

using Json = nlohmann::ordered_json;

// Offset used to keep the reference integrator off endpoint singularities.
constexpr double kNudge = 1e-12;
constexpr double kOracleTol = 1e-10;
constexpr int kGridDefaultLevels = 10;
constexpr std::size_t kMaxGridPoints = 1000000;

using Cell = std::variant<std::monostate, double, long long, std::string>;
using Row = std::vector<Cell>;

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;
    Json extra = Json::object();  // JSON-only fields (e.g. per-level contributions)
};

std::string render_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

Json cell_json(const Cell& c) {
    struct Visitor {
        Json operator()(std::monostate) const { return nullptr; }
        Json operator()(double v) const { return v; }
        Json operator()(long long v) const { return v; }
        Json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

std::string to_csv(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) s += ',';
        s += t.columns[i];
    }
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) s += ',';
            s += render_cell(row[i]);
        }
        s += '\n';
    }
    return s;
}

std::string to_json(const Table& t) {
    Json doc = Json::object();
    doc["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
            obj[t.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    for (auto it = t.extra.begin(); it != t.extra.end(); ++it) doc[it.key()] = it.value();
    return doc.dump(2) + "\n";
}

struct CommonOptions {
    bool verify = false;
    double verify_tol = 1e-2;
    std::string out_path;
    std::string format = "csv";
};

void add_common(CLI::App* sub, CommonOptions& c) {
    sub->add_flag("--verify", c.verify, "Append the reference value and absolute deviation");
    sub->add_option("--verify-tol", c.verify_tol, "Largest accepted |value - reference|")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out_path, "Write results here (plus PATH.manifest.json)");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

unsigned thread_count() {
    const char* env = std::getenv("DYADICINT_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') {
        throw DomainError("DYADICINT_THREADS", "must be a non-negative integer");
    }
    if (v != 0) return static_cast<unsigned>(v);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(i) for i in [0, count); rows land in index order whatever the
/// thread count.
void parallel_rows(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> failures(count);
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    body(i);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : failures) {
        if (e) std::rethrow_exception(e);
    }
}

double parse_real(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw DomainError(what, "'" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw DomainError(what, "'" + text + "' is not a finite number");
    }
    return v;
}

/// START:STOP:STEP, inclusive of STOP up to rounding.
std::vector<double> parse_grid(const std::string& spec, const std::string& what) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw DomainError(what, "grid must be START:STOP:STEP");
    const double start = parse_real(parts[0], what);
    const double stop = parse_real(parts[1], what);
    const double step = parse_real(parts[2], what);
    if (stop < start) throw DomainError(what, "grid STOP is below START");
    if (stop > start && !(step > 0.0)) throw DomainError(what, "grid STEP must be > 0");
    std::vector<double> values;
    if (stop == start) return {start};
    const double slack = 1e-9 * step;
    for (std::size_t i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + slack) break;
        values.push_back(std::min(v, stop));
        if (values.size() > kMaxGridPoints) throw RangeError(what, "grid has too many points");
    }
    return values;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_real(item, what));
    if (values.empty()) throw DomainError(what, "list is empty");
    return values;
}

std::vector<int> parse_levels_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw DomainError("--levels-list", "'" + item + "' is not an integer");
        }
        if (used != item.size()) throw DomainError("--levels-list", "'" + item + "' is not an integer");
        values.push_back(v);
    }
    if (values.empty()) throw DomainError("--levels-list", "list is empty");
    std::sort(values.begin(), values.end());
    return values;
}

expr::Expression parse_expression(const std::string& text, const std::string& flag,
                                  std::vector<std::string> vars = {"x"}) {
    try {
        return expr::Expression::parse(text, std::move(vars));
    } catch (const expr::ParseError& e) {
        throw expr::ParseError(e.offset(), e.expected() + " in " + flag + " \"" + text + "\"",
                               e.found());
    }
}

double oracle_nudged(const std::function<double(double)>& f, double a, double b) {
    const double nudge = kNudge * (b - a);
    return oracle::adaptive_quad(f, a + nudge, b - nudge, {kOracleTol, 50});
}

struct Verification {
    bool failed = false;
    double worst = 0.0;
};

void append_check(Row& row, Verification& v, double value, double reference, double tol) {
    const double err = std::abs(value - reference);
    row.emplace_back(reference);
    row.emplace_back(err);
    if (!(err <= tol)) {
        v.failed = true;
        v.worst = std::max(v.worst, err);
    }
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json manifest(const CLI::App* sub, const std::vector<std::string>& args, const CommonOptions& c,
              const Json& engine) {
    Json params = Json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help") continue;
        const auto& results = opt->results();
        params[opt->get_name()] = results.size() == 1 ? Json(results.front()) : Json(results);
    }
    Json m = Json::object();
    m["subcommand"] = sub->get_name();
    m["parameters"] = std::move(params);
    m["engine"] = engine;
    m["output"] = c.out_path;
    m["format"] = c.format;
    m["verify"] = c.verify;
    m["verify_tol"] = c.verify_tol;
    m["argv"] = args;
    m["timestamp"] = timestamp_utc();
    return m;
}

// ---------------------------------------------------------------------------
// Subcommands. Each fills a Table and reports verification outcome.

struct IntegrateArgs {
    std::string expr;
    std::string inv_expr;
    double a = 0.0;
    double b = 0.0;
    int levels = kDefaultLevels;
    std::string form = "shifted";
    bool oriented = false;
    bool incremental = false;
    std::optional<double> m1;
};

Form parse_form(const std::string& s) {
    if (s == "direct") return Form::direct;
    if (s == "inverse") return Form::inverse;
    return Form::shifted;
}

Table cmd_integrate(const IntegrateArgs& args, const CommonOptions& c, Verification& v) {
    const Form form = parse_form(args.form);
    const expr::Expression f = parse_expression(args.expr, "--expr");
    EngineOptions opts;
    opts.threads = thread_count();
    opts.max_derivative = args.m1;

    QuadratureResult r;
    if (form == Form::inverse) {
        if (args.inv_expr.empty()) throw DomainError("--inv-expr", "inverse form needs --inv-expr");
        const expr::Expression g = parse_expression(args.inv_expr, "--inv-expr");
        r = integrate_inverse(f.as_integrand(), g.as_integrand(), args.a, args.b, args.levels, opts);
        if (args.m1) r.bound.reset();
    } else {
        const bool flip = args.b < args.a;
        if (flip && !args.oriented) {
            throw DomainError("--b", "b < a; the series needs a <= b (pass --oriented to compute "
                                     "-integral from b to a)");
        }
        const double lo = flip ? args.b : args.a;
        const double hi = flip ? args.a : args.b;
        if (form == Form::direct) {
            r = integrate_direct(f.as_integrand(), lo, hi, args.levels, opts);
        } else if (args.incremental) {
            r = integrate_incremental(f.as_integrand(), lo, hi, args.levels, opts);
        } else {
            r = integrate(f.as_integrand(), lo, hi, args.levels, opts);
        }
        if (flip) {
            r.value = -r.value;
            for (auto& lvl : r.levels) lvl.contribution = -lvl.contribution;
        }
    }

    Table t;
    t.columns = {"a", "b", "P", "form", "value", "evaluations", "bound", "oracle", "abs_err"};
    Row row{args.a, args.b, static_cast<long long>(args.levels), std::string(to_string(form)),
            r.value, static_cast<long long>(r.evaluations)};
    row.emplace_back(r.bound ? Cell(*r.bound) : Cell(std::monostate{}));
    if (c.verify) {
        const auto fn = [&f](double x) { return f(x); };
        const double lo = std::min(args.a, args.b);
        const double hi = std::max(args.a, args.b);
        double reference = oracle_nudged(fn, lo, hi);
        if (args.b < args.a) reference = -reference;
        append_check(row, v, r.value, reference, c.verify_tol);
    } else {
        row.emplace_back(std::monostate{});
        row.emplace_back(std::monostate{});
    }
    t.rows.push_back(std::move(row));

    Json levels = Json::array();
    for (const auto& lvl : r.levels) levels.push_back({{"k", lvl.k}, {"contribution", lvl.contribution}});
    t.extra["levels"] = std::move(levels);
    t.extra["converged_early"] = r.converged_early;
    return t;
}

struct Integrate2dArgs {
    std::string expr;
    double a = 0, b = 0, c = 0, d = 0;
    int levels_x = kGridDefaultLevels;
    int levels_y = kGridDefaultLevels;
};

Table cmd_integrate2d(const Integrate2dArgs& args, const CommonOptions& c, Verification& v) {
    const expr::Expression f = parse_expression(args.expr, "--expr", {"x", "y"});
    EngineOptions opts;
    opts.threads = thread_count();
    const QuadratureResult r = integrate_2d(f.as_integrand_2d(), args.a, args.b, args.c, args.d,
                                            args.levels_x, args.levels_y, opts);
    Table t;
    t.columns = {"a", "b", "c", "d", "P", "Q", "value", "evaluations"};
    Row row{args.a, args.b, args.c, args.d, static_cast<long long>(args.levels_x),
            static_cast<long long>(args.levels_y), r.value, static_cast<long long>(r.evaluations)};
    if (c.verify) {
        t.columns.insert(t.columns.end(), {"oracle", "abs_err"});
        const oracle::OracleConfig cfg{1e-8, 50};
        const auto outer = [&](double x) {
            return oracle::adaptive_quad([&](double y) { return f(x, y); }, args.c, args.d, cfg);
        };
        append_check(row, v, r.value, oracle::adaptive_quad(outer, args.a, args.b, cfg),
                     c.verify_tol);
    }
    t.rows.push_back(std::move(row));
    return t;
}

struct LiArgs {
    std::optional<double> x;
    std::string grid;
    int levels = kGridDefaultLevels;
    std::string levels_list;
};

Table cmd_li(const LiArgs& args, const CommonOptions& c, Verification& v) {
    std::vector<double> xs;
    if (!args.grid.empty()) {
        xs = parse_grid(args.grid, "--grid");
    } else if (args.x) {
        xs = {*args.x};
    } else {
        throw DomainError("--x", "give --x or --grid");
    }
    const std::vector<int> levels =
        args.levels_list.empty() ? std::vector<int>{args.levels} : parse_levels_list(args.levels_list);

    Table t;
    t.columns = {"x", "P", "value"};
    if (c.verify) t.columns.insert(t.columns.end(), {"oracle", "abs_err"});
    const std::size_t count = xs.size() * levels.size();
    std::vector<double> values(count);
    std::vector<double> references(c.verify ? xs.size() : 0);
    parallel_rows(count, thread_count(), [&](std::size_t i) {
        values[i] = li({xs[i / levels.size()], levels[i % levels.size()]});
    });
    if (c.verify) {
        parallel_rows(xs.size(), thread_count(), [&](std::size_t i) {
            references[i] = oracle::adaptive_quad([](double s) { return 1.0 / std::log(s); }, 2.0,
                                                  xs[i], {kOracleTol, 50});
        });
    }
    for (std::size_t i = 0; i < count; ++i) {
        Row row{xs[i / levels.size()], static_cast<long long>(levels[i % levels.size()]), values[i]};
        if (c.verify) append_check(row, v, values[i], references[i / levels.size()], c.verify_tol);
        t.rows.push_back(std::move(row));
    }
    return t;
}

struct EllipticArgs {
    std::string phi = "1.5707963267948966";
    std::string hgrid;
    std::optional<double> h;
    std::optional<int> levels;
    std::string levels_list;
};

double elliptic_reference(double phi, double h) {
    if (phi == std::numbers::pi / 2) return oracle::agm_complete_elliptic(h);
    return oracle::adaptive_quad(
        [h](double theta) { return 1.0 / std::sqrt(1.0 - h * std::sin(theta) * std::sin(theta)); },
        0.0, phi, {kOracleTol, 50});
}

Table cmd_elliptic(const EllipticArgs& args, const CommonOptions& c, Verification& v) {
    const std::vector<double> phis = parse_real_list(args.phi, "--phi");
    std::vector<double> hs;
    if (!args.hgrid.empty()) {
        hs = parse_grid(args.hgrid, "--hgrid");
    } else {
        hs = {args.h.value_or(0.0)};
    }
    std::vector<int> levels;
    if (!args.levels_list.empty()) {
        levels = parse_levels_list(args.levels_list);
    } else {
        levels = {args.levels.value_or(kGridDefaultLevels)};
    }

    Table t;
    t.columns = {"phi", "h", "P", "value"};
    if (c.verify) t.columns.insert(t.columns.end(), {"oracle", "abs_err"});
    const std::size_t per_phi = hs.size() * levels.size();
    const std::size_t count = phis.size() * per_phi;
    std::vector<double> values(count);
    parallel_rows(count, thread_count(), [&](std::size_t i) {
        const double phi = phis[i / per_phi];
        const double h = hs[(i % per_phi) / levels.size()];
        values[i] = elliptic_f({phi, h, levels[i % levels.size()]});
    });
    for (std::size_t i = 0; i < count; ++i) {
        const double phi = phis[i / per_phi];
        const double h = hs[(i % per_phi) / levels.size()];
        Row row{phi, h, static_cast<long long>(levels[i % levels.size()]), values[i]};
        if (c.verify) append_check(row, v, values[i], elliptic_reference(phi, h), c.verify_tol);
        t.rows.push_back(std::move(row));
    }
    return t;
}

struct PendulumArgs {
    double m = 1.0;
    double u0 = 1.0;
    std::optional<double> e;
    std::string esweep;
    int levels = kDefaultLevels;
};

double pendulum_reference(const PendulumParams& p) {
    const double theta2 = p.turning_angle();
    const double eta = p.eta();
    const double prefactor = std::sqrt(2.0 * p.mass / (p.energy + p.well_depth));
    const auto integrand = [eta](double theta) {
        const double s = std::sin(0.5 * theta);
        return 1.0 / std::sqrt(1.0 - eta * eta * s * s);
    };
    return prefactor * oracle_nudged(integrand, -theta2, theta2);
}

Table cmd_pendulum(const PendulumArgs& args, const CommonOptions& c, Verification& v) {
    std::vector<double> energies;
    if (!args.esweep.empty()) {
        energies = parse_grid(args.esweep, "--esweep");
    } else if (args.e) {
        energies = {*args.e};
    } else {
        throw DomainError("--e", "give --e or --esweep");
    }
    Table t;
    t.columns = {"E", "theta2", "eta", "P", "T"};
    if (c.verify) t.columns.insert(t.columns.end(), {"oracle", "abs_err"});
    std::vector<double> periods(energies.size());
    parallel_rows(energies.size(), thread_count(), [&](std::size_t i) {
        periods[i] = pendulum_period({args.m, args.u0, energies[i]}, args.levels);
    });
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const PendulumParams p{args.m, args.u0, energies[i]};
        Row row{energies[i], p.turning_angle(), p.eta(), static_cast<long long>(args.levels),
                periods[i]};
        if (c.verify) append_check(row, v, periods[i], pendulum_reference(p), c.verify_tol);
        t.rows.push_back(std::move(row));
    }
    return t;
}

struct AdvanceArgs {
    std::string deriv;
    std::string expr;
    std::optional<double> fx;
    double x = 0.0;
    double h = 1.0;
    int levels = kDefaultLevels;
};

Table cmd_advance(const AdvanceArgs& args, const CommonOptions& c, Verification& v) {
    const expr::Expression fp = parse_expression(args.deriv, "--deriv");
    std::optional<expr::Expression> f;
    if (!args.expr.empty()) f = parse_expression(args.expr, "--expr");
    double f_at_x = 0.0;
    if (args.fx) {
        f_at_x = *args.fx;
    } else if (f) {
        f_at_x = (*f)(args.x);
    } else {
        throw DomainError("--fx", "give --fx or --expr for the starting value");
    }
    const double value = advance({f_at_x, fp.as_integrand(), args.x, args.h, args.levels});

    Table t;
    t.columns = {"x", "h", "P", "value"};
    Row row{args.x, args.h, static_cast<long long>(args.levels), value};
    if (c.verify) {
        if (!f) throw DomainError("--expr", "--verify needs --expr to evaluate f(x + h)");
        t.columns.insert(t.columns.end(), {"oracle", "abs_err"});
        append_check(row, v, value, (*f)(args.x + args.h), c.verify_tol);
    }
    t.rows.push_back(std::move(row));
    return t;
}

struct PeriodicArgs {
    std::string deriv;
    double period = 2.0 * std::numbers::pi;
    double x = 0.0;
    int levels = kDefaultLevels;
};

Table cmd_periodic(const PeriodicArgs& args) {
    const expr::Expression fp = parse_expression(args.deriv, "--deriv");
    const double r = periodic_residual(fp.as_integrand(), args.period, args.x, args.levels);
    Table t;
    t.columns = {"x", "T", "P", "residual"};
    t.rows.push_back({args.x, args.period, static_cast<long long>(args.levels), r});
    return t;
}

struct ExpandArgs {
    double x = 0.5;
    int s = 0;
    int levels = kDefaultLevels;
};

Table cmd_expand_unit(const ExpandArgs& args, const CommonOptions& c, Verification& v) {
    const double value = unit_exponential_expansion({args.x, args.s, args.levels});
    Table t;
    t.columns = {"x", "s", "P", "value"};
    Row row{args.x, static_cast<long long>(args.s), static_cast<long long>(args.levels), value};
    if (c.verify) {
        t.columns.insert(t.columns.end(), {"oracle", "abs_err"});
        append_check(row, v, value, std::pow(args.x, std::ldexp(1.0, args.s)), c.verify_tol);
    }
    t.rows.push_back(std::move(row));
    return t;
}

struct DigitsArgs {
    int p = 2;
    double x = 0.0;
    int kmin = -10;
};

Table cmd_digits(const DigitsArgs& args) {
    Table t;
    t.columns = {"k", "digit", "partial_sum"};
    if (args.x == 0.0) return t;
    const double ax = std::abs(args.x);
    const int top = floor_log(args.p, ax);
    if (static_cast<long long>(top) - args.kmin > 4096) {
        throw RangeError("--kmin", "more than 4096 digits requested");
    }
    for (int k = top; k >= args.kmin; --k) {
        const int d = digit(args.p, k, ax);
        t.rows.push_back({static_cast<long long>(k), static_cast<long long>(d),
                          reconstruct(args.p, args.x, k)});
    }
    return t;
}

void emit(const Table& t, const CommonOptions& c, const CLI::App* sub,
          const std::vector<std::string>& args, const Json& engine, std::ostream& out) {
    const std::string body = c.format == "json" ? to_json(t) : to_csv(t);
    if (c.out_path.empty()) {
        out << body;
        return;
    }
    std::ofstream file(c.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open --out path " + c.out_path);
    file << body;
    std::ofstream meta(c.out_path + ".manifest.json", std::ios::binary);
    if (!meta) throw std::runtime_error("cannot write manifest next to " + c.out_path);
    meta << manifest(sub, args, c, engine).dump(2) << '\n';
}

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Definite integrals as double series over dyadic rationals", "dyadicint"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");
    CommonOptions common;

    IntegrateArgs ia;
    auto* integrate_cmd = app.add_subcommand("integrate", "One-dimensional integral of --expr in x");
    integrate_cmd->add_option("--expr", ia.expr, "Integrand in x")->required();
    integrate_cmd->add_option("--a", ia.a, "Lower limit")->required();
    integrate_cmd->add_option("--b", ia.b, "Upper limit")->required();
    integrate_cmd->add_option("--levels", ia.levels, "Levels P beyond the leading one")
        ->capture_default_str();
    integrate_cmd->add_option("--form", ia.form, "Series form")
        ->check(CLI::IsMember({"direct", "shifted", "inverse"}))
        ->capture_default_str();
    integrate_cmd->add_option("--inv-expr", ia.inv_expr, "Inverse function (inverse form)");
    integrate_cmd->add_flag("--oriented", ia.oriented, "Accept b < a as -integral from b to a");
    integrate_cmd->add_flag("--incremental", ia.incremental, "Odd-node evaluation (shifted form)");
    integrate_cmd->add_option("--m1", ia.m1, "max |f'| on the interval, enables the bound column");
    add_common(integrate_cmd, common);

    Integrate2dArgs i2;
    auto* integrate2d_cmd = app.add_subcommand("integrate2d", "Double integral of --expr in x, y");
    integrate2d_cmd->add_option("--expr", i2.expr, "Integrand in x and y")->required();
    integrate2d_cmd->add_option("--a", i2.a)->required();
    integrate2d_cmd->add_option("--b", i2.b)->required();
    integrate2d_cmd->add_option("--c", i2.c)->required();
    integrate2d_cmd->add_option("--d", i2.d)->required();
    integrate2d_cmd->add_option("--levels-x", i2.levels_x)->capture_default_str();
    integrate2d_cmd->add_option("--levels-y", i2.levels_y)->capture_default_str();
    add_common(integrate2d_cmd, common);

    LiArgs la;
    auto* li_cmd = app.add_subcommand("li", "Logarithmic integral partial sums Li(x; P)");
    auto* li_x = li_cmd->add_option("--x", la.x, "Single abscissa x > 2");
    auto* li_grid = li_cmd->add_option("--grid", la.grid, "XMIN:XMAX:STEP");
    li_x->excludes(li_grid);
    auto* li_levels = li_cmd->add_option("--levels", la.levels)->capture_default_str();
    li_cmd->add_option("--levels-list", la.levels_list, "Comma-separated P values")
        ->excludes(li_levels);
    add_common(li_cmd, common);

    EllipticArgs ea;
    auto* elliptic_cmd = app.add_subcommand("elliptic", "Incomplete elliptic integrals F(phi | h, P)");
    elliptic_cmd->add_option("--phi", ea.phi, "Amplitude(s), comma-separated")->capture_default_str();
    auto* e_grid = elliptic_cmd->add_option("--hgrid", ea.hgrid, "HMIN:HMAX:STEP");
    elliptic_cmd->add_option("--h", ea.h, "Single parameter h")->excludes(e_grid);
    auto* e_levels = elliptic_cmd->add_option("--levels", ea.levels);
    elliptic_cmd->add_option("--levels-list", ea.levels_list)->excludes(e_levels);
    add_common(elliptic_cmd, common);

    PendulumArgs pa;
    auto* pendulum_cmd = app.add_subcommand("pendulum", "Libration period of U = -U0 cos(theta)");
    pendulum_cmd->add_option("--m", pa.m)->capture_default_str();
    pendulum_cmd->add_option("--u0", pa.u0)->capture_default_str();
    auto* p_e = pendulum_cmd->add_option("--e", pa.e, "Energy E");
    pendulum_cmd->add_option("--esweep", pa.esweep, "EMIN:EMAX:STEP")->excludes(p_e);
    pendulum_cmd->add_option("--levels", pa.levels)->capture_default_str();
    add_common(pendulum_cmd, common);

    AdvanceArgs aa;
    auto* advance_cmd = app.add_subcommand("advance", "f(x + h) from f(x) and samples of f'");
    advance_cmd->add_option("--deriv", aa.deriv, "Derivative f' in x")->required();
    advance_cmd->add_option("--expr", aa.expr, "f itself (start value and --verify)");
    advance_cmd->add_option("--fx", aa.fx, "f(x)");
    advance_cmd->add_option("--x", aa.x)->capture_default_str();
    advance_cmd->add_option("--h", aa.h)->capture_default_str();
    advance_cmd->add_option("--levels", aa.levels)->capture_default_str();
    add_common(advance_cmd, common);

    PeriodicArgs ra;
    auto* periodic_cmd = app.add_subcommand("periodic", "Truncated null series over one period");
    periodic_cmd->add_option("--deriv", ra.deriv, "Derivative of a periodic function")->required();
    periodic_cmd->add_option("--period", ra.period)->capture_default_str();
    periodic_cmd->add_option("--x", ra.x)->capture_default_str();
    periodic_cmd->add_option("--levels", ra.levels)->capture_default_str();
    add_common(periodic_cmd, common);

    ExpandArgs xa;
    auto* expand_cmd = app.add_subcommand("expand-unit", "Weighted-exponential expansion of x^(2^s)");
    expand_cmd->add_option("--x", xa.x)->required();
    expand_cmd->add_option("--s", xa.s)->capture_default_str();
    expand_cmd->add_option("--levels", xa.levels)->capture_default_str();
    add_common(expand_cmd, common);

    DigitsArgs da;
    auto* digits_cmd = app.add_subcommand("digits", "Radix-p digits and their partial sums");
    digits_cmd->add_option("--p", da.p)->capture_default_str();
    digits_cmd->add_option("--x", da.x)->required();
    digits_cmd->add_option("--kmin", da.kmin)->capture_default_str();
    add_common(digits_cmd, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Verification verification;
    try {
        Table table;
        Json engine = Json::object();
        if (name == "integrate") {
            table = cmd_integrate(ia, common, verification);
            engine = {{"form", ia.form}, {"P", ia.levels}, {"incremental", ia.incremental},
                      {"threads", thread_count()}};
        } else if (name == "integrate2d") {
            table = cmd_integrate2d(i2, common, verification);
            engine = {{"form", "direct"}, {"P", i2.levels_x}, {"Q", i2.levels_y}};
        } else if (name == "li") {
            table = cmd_li(la, common, verification);
            engine = {{"form", "direct"}};
        } else if (name == "elliptic") {
            table = cmd_elliptic(ea, common, verification);
            engine = {{"form", "direct"}};
        } else if (name == "pendulum") {
            table = cmd_pendulum(pa, common, verification);
            engine = {{"form", "shifted"}, {"P", pa.levels}};
        } else if (name == "advance") {
            table = cmd_advance(aa, common, verification);
            engine = {{"form", "shifted"}, {"P", aa.levels}};
        } else if (name == "periodic") {
            table = cmd_periodic(ra);
            engine = {{"form", "shifted"}, {"P", ra.levels}};
        } else if (name == "expand-unit") {
            table = cmd_expand_unit(xa, common, verification);
            engine = {{"P", xa.levels}};
        } else if (name == "digits") {
            table = cmd_digits(da);
        }
        emit(table, common, sub, args, engine, out);
    } catch (const expr::ParseError& e) {
        err << "dyadicint " << name << ": " << e.what() << '\n';
        return kParse;
    } catch (const Error& e) {
        err << "dyadicint " << name << ": error: " << e.what() << '\n';
        return kDomain;
    } catch (const std::exception& e) {
        err << "dyadicint " << name << ": " << e.what() << '\n';
        return kUsage;
    }

    if (verification.failed) {
        err << "dyadicint " << name << ": verification failed: |value - reference| = "
            << format_real(verification.worst) << " exceeds --verify-tol "
            << format_real(common.verify_tol) << '\n';
        return kVerification;
    }
    return kOk;
}

}  // namespace dyadicint::cli
