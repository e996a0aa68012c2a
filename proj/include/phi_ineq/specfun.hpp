#pragma once

#include <string_view>

namespace phi_ineq {

enum class SpecFunMethod { Series, ContinuedExpansion, QuadratureFallback, ClosedIdentity };

std::string_view to_string(SpecFunMethod method);

struct SpecFunResult {
    double value = 0.0;
    double abs_err_estimate = 0.0;
    SpecFunMethod method = SpecFunMethod::ClosedIdentity;
};

// Gamma function for x > 0 (Lanczos, g = 7). DomainError for x <= 0,
// OverflowError once the result leaves double range (x > ~171.6).
double gamma(double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Euler Beta B(x, y) for x, y > 0.
double beta_fn(double x, double y);

// Incomplete Beta: integral of t^(x-1) (1-t)^(y-1) over [0, upper].
// y <= 0 is accepted only for upper < 1 and is evaluated by quadrature.
SpecFunResult incomplete_beta_detail(double upper, double x, double y);
double incomplete_beta(double upper, double x, double y);

// Gauss hypergeometric 2F1(a, b; c; z) for z in [0, 1]. At z = 1 uses Gauss
// summation, which requires c - a - b > 0.
SpecFunResult gauss_2f1_detail(double a, double b, double c, double z);
double gauss_2f1(double a, double b, double c, double z);

} // namespace phi_ineq
