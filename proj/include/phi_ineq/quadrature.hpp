#pragma once

#include <functional>
#include <vector>

namespace phi_ineq {

using Integrand = std::function<double(double)>;

// Settings for adaptive Gauss-Kronrod integration.
//
// split_points are interior locations where the integrand is known to be
// non-smooth (kinks); panels never straddle them. A nonzero endpoint
// exponent e declares that the integrand behaves like (t - lo)^e near lo
// (respectively (hi - t)^e near hi); that segment is then integrated in the
// variable u = (distance)^(1 + e), in which the integrand is bounded.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    std::vector<double> split_points;
    double left_exponent = 0.0;
    double right_exponent = 0.0;

    // Throws DomainError when the settings are inconsistent with [lo, hi].
    void validate(double lo, double hi) const;

    // Copy with both tolerances multiplied by factor.
    QuadratureSpec scaled_tolerance(double factor) const;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int subdivisions_used = 0;
};

// Adaptive 15-point Kronrod / 7-point Gauss integration over [lo, hi].
// Throws ToleranceNotMet when max_subdivisions bisections do not bring the
// global error estimate below max(abs_tol, rel_tol * |value|), and
// NonFiniteSample when f returns inf/nan at an evaluation point.
QuadResult integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec = {});

// Integral of |base(t)| over [0, 1], split at the sign change `kink`.
// A kink at (or beyond) either endpoint contributes no split.
QuadResult integrate_kinked_abs(const Integrand& base, double kink, const QuadratureSpec& spec = {});

} // namespace phi_ineq
