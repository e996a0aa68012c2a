#pragma once

#include "phi_ineq/quadrature.hpp"

#include <functional>

namespace phi_ineq {

using RealFn = std::function<double(double)>;

// Finite interval [a, b] with a < b.
struct Interval {
    double a = 0.0;
    double b = 1.0;

    void validate() const;
    double length() const { return b - a; }
    bool contains(double x) const { return x >= a && x <= b; }
};

// Tolerances used by the fractional integrals unless the caller overrides them.
QuadratureSpec default_fracint_quadrature();

struct FracIntOptions {
    QuadratureSpec quad = default_fracint_quadrature();
    // Order zero is the identity operator; only honoured when set, otherwise
    // alpha must be strictly positive.
    bool zero_order_identity = false;
};

// Left Riemann-Liouville integral (1/Gamma(alpha)) * int_a^x (x-t)^(alpha-1) f(t) dt, x > a.
double rl_left(const RealFn& f, double a, double alpha, double x, const FracIntOptions& options = {});

// Right Riemann-Liouville integral (1/Gamma(alpha)) * int_x^b (t-x)^(alpha-1) f(t) dt, x < b.
double rl_right(const RealFn& f, double b, double alpha, double x, const FracIntOptions& options = {});

} // namespace phi_ineq
