#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace dyadicint {

/// A sampling point n / 2^k of the dyadic series. In shifted form the
/// abscissa is offset by the lower limit.
struct DyadicNode {
    int k = 0;
    std::int64_t n = 0;
    double abscissa = 0.0;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    DomainError(std::string parameter, const std::string& message)
        : Error(parameter + ": " + message), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// A request that would overflow the exponent range or a level cap.
class RangeError : public Error {
public:
    RangeError(std::string parameter, const std::string& message)
        : Error(parameter + ": " + message), parameter_(std::move(parameter)) {}

    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// Inconsistent inputs, e.g. an inverse that does not invert.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// The integrand failed (threw or produced a non-finite value).
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& message,
                             std::optional<DyadicNode> node = std::nullopt)
        : Error(node ? message + " [at node k=" + std::to_string(node->k) +
                           ", n=" + std::to_string(node->n) + "]"
                     : message),
          node_(node) {}

    const std::optional<DyadicNode>& node() const noexcept { return node_; }

private:
    std::optional<DyadicNode> node_;
};

/// The reference integrator hit its recursion cap before meeting tolerance.
class DepthExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace dyadicint
