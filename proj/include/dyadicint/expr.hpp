#pragma once

// A small arithmetic language for integrands supplied as text.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' factor)?          right-associative
//   primary := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
//
// Unary minus binds looser than '^', so -2^2 is -4 and 2^-1 is 0.5. There is
// no implicit multiplication: "2x" is an error. Functions: sin cos tan exp
// ln log2 sqrt abs asin acos atan. Constants: pi, e.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dyadicint/error.hpp"
#include "dyadicint/integrand.hpp"

namespace dyadicint::expr {

enum class NodeKind { number, constant, variable, negate, add, subtract, multiply, divide, power, call };

enum class Function { sin, cos, tan, exp, ln, log2, sqrt, abs, asin, acos, atan };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::number;
    double value = 0.0;   // number literal or constant value
    std::string name;     // constant, variable or function name
    int slot = -1;        // variable index into the declared variable list
    Function function = Function::sin;
    NodePtr lhs;          // sole operand of negate and call
    NodePtr rhs;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected, std::string found);

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::size_t offset_;
    std::string expected_;
    std::string found_;
};

/// An immutable parsed expression; copies share the tree.
class Expression {
public:
    /// Throws ParseError. `variables` lists the free names in slot order.
    static Expression parse(std::string_view source,
                            std::vector<std::string> variables = {"x"});

    /// Throws EvaluationError on domain violations, division by zero and
    /// overflow instead of returning inf/NaN.
    double eval(std::span<const double> slots) const;
    double eval(const std::map<std::string, double>& bindings) const;
    double operator()(double x) const;
    double operator()(double x, double y) const;

    /// Fully parenthesised rendering; reparses to the same tree.
    std::string to_string() const;

    const NodePtr& root() const noexcept { return root_; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const std::string& source() const noexcept { return source_; }

    Integrand as_integrand() const;
    Integrand2D as_integrand_2d() const;

private:
    Expression(NodePtr root, std::vector<std::string> variables, std::string source)
        : root_(std::move(root)), variables_(std::move(variables)), source_(std::move(source)) {}

    NodePtr root_;
    std::vector<std::string> variables_;
    std::string source_;
};

std::string print(const Node& node, std::span<const std::string> variables = {});
bool structurally_equal(const Node& a, const Node& b);

}  // namespace dyadicint::expr
