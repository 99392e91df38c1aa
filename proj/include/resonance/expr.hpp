#ifndef RESONANCE_EXPR_HPP
#define RESONANCE_EXPR_HPP

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace resonance::expr {

// Syntax error with the byte offset of the offending token.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset);
    std::size_t offset;
};

// Domain error during evaluation (ln of non-positive, division by zero, ...).
// `subexpr` is the printed form of the offending subexpression.
struct EvalError : std::runtime_error {
    EvalError(const std::string& msg, std::string subexpr);
    std::string subexpr;
};

namespace detail {
struct Node;
}

/// Immutable scalar expression over a declared set of variables.
/// Supports +, -, *, /, ^ (right-associative, binds tightest), unary minus,
/// the functions sin, cos, tan, atan, exp, ln, sqrt, abs, tanh, sign, and
/// the constants pi and e. No implicit multiplication.
class Expression {
public:
    Expression() = default;

    // Evaluate with values in the order of the declared variable list.
    double eval(std::span<const double> values) const;
    double eval(const std::map<std::string, double>& bindings) const;

    // Exact symbolic derivative with respect to `var` (constant folding only).
    // Convention: d/dx abs(x) = sign(x) with sign(0) = 0.
    Expression derivative(const std::string& var) const;

    std::string str() const;
    const std::vector<std::string>& variables() const { return vars_; }
    bool empty() const { return !root_; }

    // True if the tree actually references the given variable.
    bool depends_on(const std::string& var) const;

private:
    friend Expression parse(std::string_view, std::vector<std::string>);
    std::shared_ptr<const detail::Node> root_;
    std::vector<std::string> vars_;
};

Expression parse(std::string_view src, std::vector<std::string> variables);

}  // namespace resonance::expr

#endif
