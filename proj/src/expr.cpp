#include "dyadicint/expr.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <utility>

namespace dyadicint::expr {

namespace {

constexpr int kMaxNesting = 256;
// Trees are walked recursively; this keeps left-deep chains shallow enough.
constexpr int kMaxNodes = 10000;

struct FunctionName {
    std::string_view name;
    Function function;
};

constexpr std::array<FunctionName, 11> kFunctions{{
    {"sin", Function::sin},   {"cos", Function::cos},   {"tan", Function::tan},
    {"exp", Function::exp},   {"ln", Function::ln},     {"log2", Function::log2},
    {"sqrt", Function::sqrt}, {"abs", Function::abs},   {"asin", Function::asin},
    {"acos", Function::acos}, {"atan", Function::atan},
}};

std::string_view function_name(Function f) {
    for (const auto& entry : kFunctions) {
        if (entry.function == f) return entry.name;
    }
    return "?";
}

enum class Tok { end, number, ident, plus, minus, star, slash, caret, lparen, rparen, invalid };

struct Token {
    Tok kind = Tok::end;
    std::size_t offset = 0;
    std::string_view text;
    double number = 0.0;
};

std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + std::string(t.text) + "'";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token t;
        t.offset = pos_;
        if (pos_ >= src_.size()) return t;

        const char c = src_[pos_];
        const auto single = [&](Tok kind) {
            t.kind = kind;
            t.text = src_.substr(pos_, 1);
            ++pos_;
            return t;
        };
        switch (c) {
            case '+': return single(Tok::plus);
            case '-': return single(Tok::minus);
            case '*': return single(Tok::star);
            case '/': return single(Tok::slash);
            case '^': return single(Tok::caret);
            case '(': return single(Tok::lparen);
            case ')': return single(Tok::rparen);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(t);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_')) {
                ++pos_;
            }
            t.kind = Tok::ident;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        return single(Tok::invalid);
    }

private:
    bool digit_at(std::size_t i) const {
        return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
    }

    Token number(Token t) {
        const std::size_t start = pos_;
        while (digit_at(pos_)) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (digit_at(pos_)) ++pos_;
        }
        if (pos_ - start == 1 && src_[start] == '.') {
            t.kind = Tok::invalid;
            t.text = src_.substr(start, 1);
            return t;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t q = pos_ + 1;
            if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) ++q;
            if (digit_at(q)) {
                pos_ = q;
                while (digit_at(pos_)) ++pos_;
            }
        }
        t.text = src_.substr(start, pos_ - start);
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                                               t.number, std::chars_format::general);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(t.number)) {
            throw ParseError(t.offset, "representable number", "'" + std::string(t.text) + "'");
        }
        t.kind = Tok::number;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

NodePtr make_binary(NodeKind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& variables)
        : lexer_(src), variables_(variables) {
        advance();
    }

    NodePtr parse() {
        NodePtr root = expression();
        if (current_.kind != Tok::end) {
            throw ParseError(current_.offset, "operator or end of input", describe(current_));
        }
        return root;
    }

private:
    void advance() {
        current_ = lexer_.next();
        if (++tokens_ > kMaxNodes) {
            throw ParseError(current_.offset, "shorter expression", describe(current_));
        }
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxNesting) {
                throw ParseError(parser.current_.offset, "shallower nesting",
                                 describe(parser.current_));
            }
        }
        ~DepthGuard() { --parser.depth_; }
        Parser& parser;
    };

    NodePtr expression() {
        DepthGuard guard(*this);
        NodePtr lhs = term();
        while (current_.kind == Tok::plus || current_.kind == Tok::minus) {
            const NodeKind kind = current_.kind == Tok::plus ? NodeKind::add : NodeKind::subtract;
            advance();
            lhs = make_binary(kind, std::move(lhs), term());
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = factor();
        while (current_.kind == Tok::star || current_.kind == Tok::slash) {
            const NodeKind kind = current_.kind == Tok::star ? NodeKind::multiply : NodeKind::divide;
            advance();
            lhs = make_binary(kind, std::move(lhs), factor());
        }
        return lhs;
    }

    NodePtr factor() {
        DepthGuard guard(*this);
        if (current_.kind == Tok::minus) {
            advance();
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::negate;
            n->lhs = factor();
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (current_.kind == Tok::caret) {
            advance();
            return make_binary(NodeKind::power, std::move(base), factor());
        }
        return base;
    }

    NodePtr primary() {
        const Token t = current_;
        switch (t.kind) {
            case Tok::number: {
                advance();
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::number;
                n->value = t.number;
                return n;
            }
            case Tok::lparen: {
                advance();
                NodePtr inner = expression();
                expect(Tok::rparen, "')'");
                return inner;
            }
            case Tok::ident: return identifier(t);
            default: throw ParseError(t.offset, "factor", describe(t));
        }
    }

    NodePtr identifier(const Token& t) {
        advance();
        const std::string name(t.text);
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (variables_[i] == name) {
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::variable;
                n->name = name;
                n->slot = static_cast<int>(i);
                return n;
            }
        }
        if (name == "pi" || name == "e") {
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::constant;
            n->name = name;
            n->value = name == "pi" ? std::numbers::pi : std::numbers::e;
            return n;
        }
        for (const auto& entry : kFunctions) {
            if (entry.name == name) {
                expect(Tok::lparen, "'(' after function name");
                auto n = std::make_shared<Node>();
                n->kind = NodeKind::call;
                n->name = name;
                n->function = entry.function;
                n->lhs = expression();
                expect(Tok::rparen, "')'");
                return n;
            }
        }
        throw ParseError(t.offset, "declared variable, constant or function", "'" + name + "'");
    }

    void expect(Tok kind, const char* what) {
        if (current_.kind != kind) throw ParseError(current_.offset, what, describe(current_));
        advance();
    }

    Lexer lexer_;
    const std::vector<std::string>& variables_;
    Token current_;
    int depth_ = 0;
    int tokens_ = 0;
};

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Evaluator {
public:
    Evaluator(std::span<const double> slots, std::span<const std::string> names)
        : slots_(slots), names_(names) {}

    double eval(const Node& n) const {
        switch (n.kind) {
            case NodeKind::number:
            case NodeKind::constant: return n.value;
            case NodeKind::variable:
                if (n.slot < 0 || static_cast<std::size_t>(n.slot) >= slots_.size()) {
                    fail(n, "unbound variable '" + n.name + "'");
                }
                return slots_[static_cast<std::size_t>(n.slot)];
            case NodeKind::negate: return -eval(*n.lhs);
            case NodeKind::add: return checked(n, eval(*n.lhs) + eval(*n.rhs));
            case NodeKind::subtract: return checked(n, eval(*n.lhs) - eval(*n.rhs));
            case NodeKind::multiply: return checked(n, eval(*n.lhs) * eval(*n.rhs));
            case NodeKind::divide: {
                const double num = eval(*n.lhs);
                const double den = eval(*n.rhs);
                if (den == 0.0) fail(n, "division by zero");
                return checked(n, num / den);
            }
            case NodeKind::power: {
                const double base = eval(*n.lhs);
                const double exponent = eval(*n.rhs);
                const double r = std::pow(base, exponent);
                if (std::isnan(r)) fail(n, "negative base with non-integer exponent");
                if (base == 0.0 && exponent < 0.0) fail(n, "zero raised to a negative power");
                return checked(n, r);
            }
            case NodeKind::call: return call(n, eval(*n.lhs));
        }
        return 0.0;
    }

private:
    double call(const Node& n, double a) const {
        switch (n.function) {
            case Function::sin: return std::sin(a);
            case Function::cos: return std::cos(a);
            case Function::tan: return checked(n, std::tan(a));
            case Function::exp: return checked(n, std::exp(a));
            case Function::ln:
                if (!(a > 0.0)) fail(n, "ln needs a positive argument");
                return std::log(a);
            case Function::log2:
                if (!(a > 0.0)) fail(n, "log2 needs a positive argument");
                return std::log2(a);
            case Function::sqrt:
                if (a < 0.0) fail(n, "sqrt needs a non-negative argument");
                return std::sqrt(a);
            case Function::abs: return std::abs(a);
            case Function::asin:
                if (a < -1.0 || a > 1.0) fail(n, "asin needs an argument in [-1, 1]");
                return std::asin(a);
            case Function::acos:
                if (a < -1.0 || a > 1.0) fail(n, "acos needs an argument in [-1, 1]");
                return std::acos(a);
            case Function::atan: return std::atan(a);
        }
        return 0.0;
    }

    double checked(const Node& n, double r) const {
        if (std::isnan(r)) fail(n, "undefined result");
        if (std::isinf(r)) fail(n, "overflow");
        return r;
    }

    [[noreturn]] void fail(const Node& n, const std::string& what) const {
        std::string where = what + " in " + print(n, names_);
        for (std::size_t i = 0; i < names_.size() && i < slots_.size(); ++i) {
            where += (i == 0 ? " with " : ", ") + names_[i] + "=" + format_number(slots_[i]);
        }
        throw EvaluationError(where);
    }

    std::span<const double> slots_;
    std::span<const std::string> names_;
};

char op_symbol(NodeKind kind) {
    switch (kind) {
        case NodeKind::add: return '+';
        case NodeKind::subtract: return '-';
        case NodeKind::multiply: return '*';
        case NodeKind::divide: return '/';
        case NodeKind::power: return '^';
        default: return '?';
    }
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : Error("parse error at offset " + std::to_string(offset) + ": expected " + expected +
            ", found " + found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

Expression Expression::parse(std::string_view source, std::vector<std::string> variables) {
    Parser parser(source, variables);
    NodePtr root = parser.parse();
    return Expression(std::move(root), std::move(variables), std::string(source));
}

double Expression::eval(std::span<const double> slots) const {
    return Evaluator(slots, variables_).eval(*root_);
}

double Expression::eval(const std::map<std::string, double>& bindings) const {
    std::vector<double> slots;
    slots.reserve(variables_.size());
    for (const auto& name : variables_) {
        const auto it = bindings.find(name);
        if (it == bindings.end()) throw EvaluationError("unbound variable '" + name + "'");
        slots.push_back(it->second);
    }
    return eval(slots);
}

double Expression::operator()(double x) const {
    const std::array<double, 1> slots{x};
    return eval(slots);
}

double Expression::operator()(double x, double y) const {
    const std::array<double, 2> slots{x, y};
    return eval(slots);
}

std::string Expression::to_string() const { return print(*root_, variables_); }

Integrand Expression::as_integrand() const {
    return Integrand([self = *this](double x) { return self(x); }, source_);
}

Integrand2D Expression::as_integrand_2d() const {
    return Integrand2D([self = *this](double x, double y) { return self(x, y); }, source_);
}

std::string print(const Node& node, std::span<const std::string> variables) {
    switch (node.kind) {
        case NodeKind::number: return format_number(node.value);
        case NodeKind::constant: return node.name;
        case NodeKind::variable:
            if (node.slot >= 0 && static_cast<std::size_t>(node.slot) < variables.size()) {
                return variables[static_cast<std::size_t>(node.slot)];
            }
            return node.name;
        case NodeKind::negate: return "(-" + print(*node.lhs, variables) + ")";
        case NodeKind::call:
            return std::string(function_name(node.function)) + "(" + print(*node.lhs, variables) +
                   ")";
        case NodeKind::add:
        case NodeKind::subtract:
        case NodeKind::multiply:
        case NodeKind::divide:
        case NodeKind::power:
            return "(" + print(*node.lhs, variables) + " " + op_symbol(node.kind) + " " +
                   print(*node.rhs, variables) + ")";
    }
    return {};
}

bool structurally_equal(const Node& a, const Node& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::number: return std::bit_cast<std::uint64_t>(a.value) ==
                                      std::bit_cast<std::uint64_t>(b.value);
        case NodeKind::constant: return a.name == b.name;
        case NodeKind::variable: return a.slot == b.slot && a.name == b.name;
        case NodeKind::negate: return structurally_equal(*a.lhs, *b.lhs);
        case NodeKind::call:
            return a.function == b.function && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

}  // namespace dyadicint::expr
