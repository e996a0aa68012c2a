#pragma once

#include "phi_ineq/convexity.hpp"
#include "phi_ineq/functions.hpp"
#include "phi_ineq/quadrature.hpp"
#include "phi_ineq/specfun.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phi_ineq {

// Parameter point (a, b, x, lambda, alpha, q, p, s) for S_f and the bounds.
struct EvalParams {
    Interval interval;
    double x = 0.5;
    double lambda = 0.0;
    double alpha = 1.0;
    double q = 1.0;
    // Hoelder exponent conjugate to q; derived from q when unset.
    std::optional<double> p;
    double s = 1.0;

    // Throws DomainError listing every violated constraint.
    void validate() const;

    // p if set, else q / (q - 1); DomainError when q <= 1.
    double conjugate_p() const;
};

QuadratureSpec default_coefficient_quadrature();

// Tolerances shared by every coefficient integral and by S_f.
struct BoundsQuadrature {
    QuadratureSpec coefficients = default_coefficient_quadrature();
    QuadratureSpec fractional = default_fracint_quadrature();

    BoundsQuadrature scaled_tolerance(double factor) const;
};

// S_f(x, lambda, alpha; a, b): the four-term combination of f'(x), f(x), the
// endpoint values and the two fractional integrals J_{x-}^alpha f(a) and
// J_{x+}^alpha f(b).
double s_f(const TestFunction& fn, const EvalParams& params, const BoundsQuadrature& quad = {});

// Two-integral representation of S_f through f''.
double lemma1_rhs(const TestFunction& fn, const EvalParams& params, const BoundsQuadrature& quad = {});

// Sign change t = lambda^(1/alpha) of t (lambda - t^alpha) on [0, 1].
double kink_point(double alpha, double lambda);

// int_0^1 |t (lambda - t^alpha)| dt in closed form.
double coef_a1(double alpha, double lambda);
// Same integral by quadrature.
double coef_a1_quadrature(double alpha, double lambda, const QuadratureSpec& quad = default_coefficient_quadrature());

enum class WeightedCoef { A2, A3 };

// A2 = int_0^1 |t (lambda - t^alpha)| t phi(t) dt,
// A3 = int_0^1 |t (lambda - t^alpha)| (1-t) phi(1-t) dt.
double coef_weighted(double alpha, double lambda, const PhiKernel& kernel, WeightedCoef which,
                     const QuadratureSpec& quad = default_coefficient_quadrature());

// B = int_0^1 |t (lambda - t^alpha)|^p dt, and its pieces on either side of the kink.
double coef_b(double alpha, double lambda, double p, const QuadratureSpec& quad = default_coefficient_quadrature());
double coef_c1(double alpha, double lambda, double p, const QuadratureSpec& quad = default_coefficient_quadrature());
double coef_c2(double alpha, double lambda, double p, const QuadratureSpec& quad = default_coefficient_quadrature());

// int_0^1 t phi(t) dt.
double kernel_mean(const PhiKernel& kernel, const QuadratureSpec& quad = default_coefficient_quadrature());

// Closed-form expressions for the coefficients, evaluated literally. They are
// compared against the quadrature values above and never feed the bounds.
enum class PrintedCoef { A2C, A3C, A4, A5, B_closed, C1, C2 };

std::string_view to_string(PrintedCoef name);
std::optional<PrintedCoef> printed_coef_from_string(std::string_view text);

// Uses params.alpha, params.lambda, params.s (A4, A5) and conjugate_p() (B_closed, C1, C2).
// Throws DomainError when the formula needs an undefined quantity.
SpecFunResult printed_coefficient(PrintedCoef name, const EvalParams& params);

// Quadrature value the printed closed form is meant to equal.
double oracle_coefficient(PrintedCoef name, const EvalParams& params,
                          const QuadratureSpec& quad = default_coefficient_quadrature());

struct CoefficientSet {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    std::optional<double> a4;
    std::optional<double> a5;
    std::optional<double> b_coef;
    std::map<std::string, double> oracle_residuals;
};

// A1..A3 for the kernel; A4/A5 when the kernel is a power kernel, B when q > 1.
// Residuals record |closed form - quadrature| for A1 and every printed form
// that evaluates.
CoefficientSet compute_coefficients(const EvalParams& params, const PhiKernel& kernel, const BoundsQuadrature& quad = {});

// Power-mean bound (q >= 1) on |S_f| for |f''|^q phi-convex.
double theorem1_bound(const TestFunction& fn, const EvalParams& params, const PhiKernel& kernel,
                      const BoundsQuadrature& quad = {});

// Hoelder bound (q > 1, p = q/(q-1)) on |S_f| for |f''|^q phi-convex.
double theorem2_bound(const TestFunction& fn, const EvalParams& params, const PhiKernel& kernel,
                      const BoundsQuadrature& quad = {});

enum class Corollary { C1_phi1, C3_powers, C4_phi1_holder, C6_powers_holder };

std::string_view to_string(Corollary which);

// Theorem bound with the corollary's kernel: constant for C1/C4, power(params.s) for C3/C6.
double corollary_bound(Corollary which, const TestFunction& fn, const EvalParams& params,
                       const BoundsQuadrature& quad = {});

// Midpoint presets x = (a+b)/2 with lambda in {1/3, 0, 1}.
std::vector<EvalParams> midpoint_presets(const Interval& interval, double alpha, double q);

} // namespace phi_ineq
