#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace hurstlab {

// Scalar expression in one variable `x`. Grammar: real literals, x, binary
// + - * /, unary -, parentheses, and the functions sin, cos, exp. Trees are
// immutable after parse; eval is pure.
class Expr {
public:
    virtual ~Expr() = default;
    virtual double eval(double x) const = 0;
    virtual void print(std::string& out) const = 0;

    std::string to_string() const {
        std::string s;
        print(s);
        return s;
    }
};

using ExprPtr = std::shared_ptr<const Expr>;

// Throws ParseError (with byte offset) on lexical errors, unexpected tokens,
// unbalanced parentheses, unknown functions, or trailing input.
ExprPtr parse_expression(std::string_view src);

// The pair (diffusion V1, drift V2). `source` records how it was built.
struct CoefficientSpec {
    ExprPtr v1;  // diffusion coefficient
    ExprPtr v2;  // drift coefficient
    std::string source;

    double eval_v1(double x) const { return v1->eval(x); }
    double eval_v2(double x) const { return v2->eval(x); }
};

// Builds a spec from two expression strings and probes both on a grid in
// [-50, 50] for non-finite values.
CoefficientSpec make_coefficients(std::string_view v1_src, std::string_view v2_src);

// Built-in test equations: "sde1" is (v1 = 2+sin(x), v2 = x),
// "sde2" is (v1 = 2+cos(x), v2 = sin(x)).
CoefficientSpec builtin_coefficients(std::string_view name);

}  // namespace hurstlab
