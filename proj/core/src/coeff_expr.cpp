#include "hurstlab/coeff_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "hurstlab/errors.hpp"

namespace hurstlab {

namespace {

struct Literal final : Expr {
    double value;
    explicit Literal(double v) : value(v) {}
    double eval(double) const override { return value; }
    void print(std::string& out) const override {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        out += buf;
    }
};

struct Variable final : Expr {
    double eval(double x) const override { return x; }
    void print(std::string& out) const override { out += 'x'; }
};

struct Unary final : Expr {
    ExprPtr operand;
    explicit Unary(ExprPtr e) : operand(std::move(e)) {}
    double eval(double x) const override { return -operand->eval(x); }
    void print(std::string& out) const override {
        out += "(-";
        operand->print(out);
        out += ')';
    }
};

struct Binary final : Expr {
    char op;
    ExprPtr lhs, rhs;
    Binary(char o, ExprPtr l, ExprPtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
    double eval(double x) const override {
        const double a = lhs->eval(x);
        const double b = rhs->eval(x);
        switch (op) {
            case '+': return a + b;
            case '-': return a - b;
            case '*': return a * b;
            default: return a / b;
        }
    }
    void print(std::string& out) const override {
        out += '(';
        lhs->print(out);
        out += op;
        rhs->print(out);
        out += ')';
    }
};

struct Call final : Expr {
    std::string name;
    ExprPtr arg;
    Call(std::string n, ExprPtr a) : name(std::move(n)), arg(std::move(a)) {}
    double eval(double x) const override {
        const double v = arg->eval(x);
        if (name == "sin") return std::sin(v);
        if (name == "cos") return std::cos(v);
        return std::exp(v);
    }
    void print(std::string& out) const override {
        out += name;
        out += '(';
        arg->print(out);
        out += ')';
    }
};

// Recursive-descent parser with the usual precedence:
// expr := term (('+'|'-') term)*      left associative
// term := unary (('*'|'/') unary)*    left associative
// unary := '-' unary | primary
// primary := number | 'x' | ident '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    ExprPtr run() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected trailing input at offset " + std::to_string(pos_), pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what, std::size_t at) {
        throw ParseError(what + " at offset " + std::to_string(at), at);
    }

    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = std::make_shared<Binary>('+', lhs, parse_term());
            else if (eat('-'))
                lhs = std::make_shared<Binary>('-', lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (eat('*'))
                lhs = std::make_shared<Binary>('*', lhs, parse_unary());
            else if (eat('/'))
                lhs = std::make_shared<Binary>('/', lhs, parse_unary());
            else
                return lhs;
        }
    }

    ExprPtr parse_unary() {
        if (eat('-')) return std::make_shared<Unary>(parse_unary());
        return parse_primary();
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) fail("incomplete expression", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            ExprPtr inner = parse_sum();
            if (!eat(')')) fail("unbalanced parenthesis opened", open);
            return inner;
        }
        fail(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        const char* begin = src_.data() + start;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number", start);
        pos_ = start + static_cast<std::size_t>(end - begin);
        if (!std::isfinite(v)) fail("literal out of range", start);
        return std::make_shared<Literal>(v);
    }

    ExprPtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string name(src_.substr(start, pos_ - start));
        if (name == "x") return std::make_shared<Variable>();
        if (name != "sin" && name != "cos" && name != "exp")
            fail("unknown function '" + name + "'", start);
        if (!eat('(')) fail("expected '(' after function " + name, pos_);
        ExprPtr arg = parse_sum();
        if (!eat(')')) fail("unbalanced parenthesis in call of " + name, start);
        return std::make_shared<Call>(name, arg);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// Boundedness of the coefficients is the caller's responsibility; we only
// reject expressions that are non-finite somewhere on a probe grid.
void probe_finite(const ExprPtr& e, const std::string& label) {
    for (int i = -100; i <= 100; ++i) {
        const double x = 0.5 * i;
        if (!std::isfinite(e->eval(x)))
            throw InvalidArgument("coefficient " + label + " is non-finite at x = " +
                                  std::to_string(x));
    }
}

}  // namespace

ExprPtr parse_expression(std::string_view src) { return Parser(src).run(); }

CoefficientSpec make_coefficients(std::string_view v1_src, std::string_view v2_src) {
    CoefficientSpec spec;
    spec.v1 = parse_expression(v1_src);
    spec.v2 = parse_expression(v2_src);
    spec.source = "expr:" + std::string(v1_src) + ";" + std::string(v2_src);
    probe_finite(spec.v1, "V1");
    probe_finite(spec.v2, "V2");
    return spec;
}

CoefficientSpec builtin_coefficients(std::string_view name) {
    if (name == "sde1") {
        CoefficientSpec spec;
        spec.v1 = parse_expression("2+sin(x)");
        spec.v2 = parse_expression("x");
        spec.source = "sde1";
        return spec;
    }
    if (name == "sde2") {
        CoefficientSpec spec;
        spec.v1 = parse_expression("2+cos(x)");
        spec.v2 = parse_expression("sin(x)");
        spec.source = "sde2";
        return spec;
    }
    throw InvalidArgument("unknown builtin '" + std::string(name) +
                          "'; available: sde1, sde2");
}

}  // namespace hurstlab
