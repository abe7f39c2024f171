#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>

#include "dyadicint/applications.hpp"
#include "dyadicint/dyadic.hpp"
#include "dyadicint/engine.hpp"
#include "dyadicint/error.hpp"
#include "dyadicint/expansions.hpp"
#include "dyadicint/expr.hpp"
#include "dyadicint/oracle.hpp"

namespace py = pybind11;
using namespace dyadicint;

namespace {

// Python callables or expression strings.
using Source = std::variant<std::string, std::function<double(double)>>;
using Source2D = std::variant<std::string, std::function<double(double, double)>>;

Integrand to_integrand(const Source& s) {
    if (const auto* text = std::get_if<std::string>(&s)) {
        return expr::Expression::parse(*text).as_integrand();
    }
    return Integrand(std::get<std::function<double(double)>>(s));
}

Integrand2D to_integrand_2d(const Source2D& s) {
    if (const auto* text = std::get_if<std::string>(&s)) {
        return expr::Expression::parse(*text, {"x", "y"}).as_integrand_2d();
    }
    return Integrand2D(std::get<std::function<double(double, double)>>(s));
}

EngineOptions options(bool early_stop, std::optional<double> max_derivative) {
    EngineOptions o;
    o.threads = 1;
    o.early_stop = early_stop;
    o.max_derivative = max_derivative;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Definite integrals as truncated series over dyadic rationals";

    // Translators registered later are tried first, so bases go first.
    const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_OverflowError);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
    py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
    py::register_exception<DepthExhausted>(m, "DepthExhausted", base.ptr());
    py::register_exception<expr::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<QuadratureResult>(m, "QuadratureResult")
        .def_readonly("value", &QuadratureResult::value)
        .def_readonly("evaluations", &QuadratureResult::evaluations)
        .def_readonly("bound", &QuadratureResult::bound)
        .def_readonly("converged_early", &QuadratureResult::converged_early)
        .def_property_readonly("levels",
                               [](const QuadratureResult& r) {
                                   py::list out;
                                   for (const auto& l : r.levels) out.append(py::make_tuple(l.k, l.contribution));
                                   return out;
                               })
        .def("__float__", [](const QuadratureResult& r) { return r.value; })
        .def("__repr__", [](const QuadratureResult& r) {
            return "QuadratureResult(value=" + std::to_string(r.value) +
                   ", evaluations=" + std::to_string(r.evaluations) + ")";
        });

    m.def(
        "integrate",
        [](const Source& f, double a, double b, int levels, const std::string& form,
           std::optional<Source> f_inv, bool incremental, bool early_stop,
           std::optional<double> max_derivative) {
            const auto opts = options(early_stop, max_derivative);
            const Integrand g = to_integrand(f);
            if (form == "direct") return integrate_direct(g, a, b, levels, opts);
            if (form == "inverse") {
                if (!f_inv) throw DomainError("f_inv", "inverse form needs f_inv");
                return integrate_inverse(g, to_integrand(*f_inv), a, b, levels, opts);
            }
            if (form != "shifted") throw DomainError("form", "expected direct, shifted or inverse");
            return incremental ? integrate_incremental(g, a, b, levels, opts)
                               : integrate(g, a, b, levels, opts);
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("levels") = kDefaultLevels,
        py::arg("form") = "shifted", py::arg("f_inv") = py::none(), py::arg("incremental") = false,
        py::arg("early_stop") = false, py::arg("max_derivative") = py::none(),
        "Integrate f (callable or expression in x) over [a, b].");

    m.def(
        "integrate_2d",
        [](const Source2D& f, double a, double b, double c, double d, int levels_x, int levels_y) {
            return integrate_2d(to_integrand_2d(f), a, b, c, d, levels_x, levels_y, options(false, {}));
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("levels_x") = 10,
        py::arg("levels_y") = 10);

    m.def(
        "level_sum",
        [](const Source& f, double a, double b, int k) { return level_sum(to_integrand(f), a, b, k, options(false, {})); },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("k"));

    m.def(
        "error_bound",
        [](double m1, double a, double b, int levels) { return error_bound({m1, a, b, levels}); },
        py::arg("max_derivative"), py::arg("a"), py::arg("b"), py::arg("levels"));

    m.def(
        "digit", [](int p, int k, double x) { return dyadicint::digit(p, k, x); }, py::arg("p"), py::arg("k"), py::arg("x"));
    m.def(
        "reconstruct", [](int p, double x, int kmin) { return dyadicint::reconstruct(p, x, kmin); }, py::arg("p"), py::arg("x"),
        py::arg("kmin"));

    m.def(
        "li", [](double x, int levels) { return li({x, levels}); }, py::arg("x"), py::arg("levels") = 10);
    m.def(
        "elliptic_f", [](double phi, double h, int levels) { return elliptic_f({phi, h, levels}); }, py::arg("phi"),
        py::arg("h"), py::arg("levels") = 10);
    m.def(
        "pendulum_period",
        [](double mass, double well_depth, double energy, int levels) {
            return pendulum_period({mass, well_depth, energy}, levels);
        },
        py::arg("m"), py::arg("u0"), py::arg("e"), py::arg("levels") = kDefaultLevels);

    m.def(
        "advance",
        [](double f_at_x, const Source& derivative, double x, double h, int levels) {
            return advance({f_at_x, to_integrand(derivative), x, h, levels});
        },
        py::arg("f_at_x"), py::arg("derivative"), py::arg("x"), py::arg("h"), py::arg("levels") = kDefaultLevels);
    m.def(
        "periodic_residual",
        [](const Source& derivative, double period, double x, int levels) {
            return periodic_residual(to_integrand(derivative), period, x, levels);
        },
        py::arg("derivative"), py::arg("period"), py::arg("x") = 0.0, py::arg("levels") = kDefaultLevels);
    m.def(
        "unit_exponential_expansion",
        [](double x, int s, int levels) { return unit_exponential_expansion({x, s, levels}); }, py::arg("x"),
        py::arg("s") = 0, py::arg("levels") = kDefaultLevels);
    m.def(
        "unit_exponential_terms",
        [](double x, int s, int levels) {
            py::list out;
            for (const auto& t : unit_exponential_terms({x, s, levels})) out.append(py::make_tuple(t.k, t.n, t.value));
            return out;
        },
        py::arg("x"), py::arg("s") = 0, py::arg("levels") = kDefaultLevels);

    m.def(
        "adaptive_quad",
        [](const Source& f, double a, double b, double tol, int max_depth) {
            return oracle::adaptive_quad(to_integrand(f), a, b, {tol, max_depth});
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-10, py::arg("max_depth") = 50);
    m.def("agm_complete_elliptic", &oracle::agm_complete_elliptic, py::arg("h"));

    py::class_<expr::Expression>(m, "Expression")
        .def_static(
            "parse", [](const std::string& s, std::vector<std::string> vars) { return expr::Expression::parse(s, std::move(vars)); },
            py::arg("source"), py::arg("variables") = std::vector<std::string>{"x"})
        .def("__call__", [](const expr::Expression& e, py::args args) {
            std::vector<double> values;
            for (const auto& a : args) values.push_back(a.cast<double>());
            return e.eval(values);
        })
        .def("__str__", &expr::Expression::to_string)
        .def_property_readonly("variables", &expr::Expression::variables)
        .def_property_readonly("source", &expr::Expression::source);
    m.def(
        "parse", [](const std::string& s, std::vector<std::string> vars) { return expr::Expression::parse(s, std::move(vars)); },
        py::arg("source"), py::arg("variables") = std::vector<std::string>{"x"});
}
