#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace phi_ineq {

// Small expression language in the variable t:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?        exponent must not contain t
//   primary := number | 't' | fn '(' expr ')' | '(' expr ')'
//   fn      := exp | ln | sqrt
//
// Derivatives are formed symbolically, so f, f' and f'' of a parsed
// expression are exact up to floating-point evaluation.
class Expr {
public:
    struct Node;

    static Expr parse(std::string_view text);
    static Expr constant(double value);
    static Expr variable();

    double operator()(double t) const;
    Expr derivative() const;
    bool depends_on_t() const;
    std::string to_string() const;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

} // namespace phi_ineq
