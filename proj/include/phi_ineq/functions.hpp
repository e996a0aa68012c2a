#pragma once

#include "phi_ineq/fracint.hpp"

#include <optional>
#include <string>
#include <vector>

namespace phi_ineq {

// f together with its first two derivatives on a domain.
struct TestFunction {
    std::string name;
    RealFn f;
    RealFn f1;
    RealFn f2;
    Interval domain;
};

// Builds a TestFunction from an expression in t; derivatives are symbolic.
TestFunction function_from_expression(const std::string& text, const Interval& domain);

// Built-in functions:
//   t, t^2, t^3, t^4, exp(t)      on [0, 1]
//   -ln(t)                        on [0.5, 2]
//   sqrt_control = 4/15 t^(5/2)   on [0, 1], f'' = sqrt(t) is concave
const std::vector<TestFunction>& function_registry();

std::optional<TestFunction> find_registered(const std::string& name);

// Registry entry if the name is known, otherwise the parsed expression.
// A domain override replaces the registry domain.
TestFunction lookup_function(const std::string& name_or_expression, std::optional<Interval> domain = std::nullopt);

struct DerivativeCheck {
    bool ok = true;
    double worst_f1_rel = 0.0;
    double worst_f2_rel = 0.0;
};

// Compares f1 and f2 with central differences of f and f1 on interior sample
// points; ok when both relative mismatches stay within rel_tol.
DerivativeCheck check_derivatives(const TestFunction& fn, int samples = 17, double rel_tol = 1e-6);

} // namespace phi_ineq
