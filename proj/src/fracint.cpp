#include "phi_ineq/fracint.hpp"

#include "phi_ineq/errors.hpp"
#include "phi_ineq/specfun.hpp"

#include <cmath>
#include <sstream>

namespace phi_ineq {

namespace {

void check_order(double alpha, const FracIntOptions& options)
{
    if (alpha > 0.0 && std::isfinite(alpha)) return;
    if (alpha == 0.0 && options.zero_order_identity) return;
    std::ostringstream os;
    os << "fractional order must be > 0, got " << alpha;
    throw DomainError(os.str());
}

// (1/Gamma(alpha)) * int_0^length s^(alpha-1) g(s) ds; the kernel singularity
// sits at s = 0 where the distance is exact.
double weighted_distance_integral(const RealFn& g, double length, double alpha, const QuadratureSpec& quad)
{
    QuadratureSpec spec = quad;
    spec.split_points.clear();
    spec.left_exponent = alpha == 1.0 ? 0.0 : alpha - 1.0;
    spec.right_exponent = 0.0;
    const QuadResult r = integrate(
        [&g, alpha](double s) { return (alpha == 1.0 ? 1.0 : std::pow(s, alpha - 1.0)) * g(s); }, 0.0, length,
        spec);
    return r.value / gamma(alpha);
}

} // namespace

void Interval::validate() const
{
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
        std::ostringstream os;
        os << "interval requires finite a < b, got [" << a << ", " << b << "]";
        throw DomainError(os.str());
    }
}

QuadratureSpec default_fracint_quadrature()
{
    QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-12;
    spec.max_subdivisions = 4000;
    return spec;
}

double rl_left(const RealFn& f, double a, double alpha, double x, const FracIntOptions& options)
{
    check_order(alpha, options);
    if (alpha == 0.0) return f(x);
    if (!(x > a)) {
        std::ostringstream os;
        os << "rl_left requires x > a, got a = " << a << ", x = " << x;
        throw DomainError(os.str());
    }
    return weighted_distance_integral([&f, x](double s) { return f(x - s); }, x - a, alpha, options.quad);
}

double rl_right(const RealFn& f, double b, double alpha, double x, const FracIntOptions& options)
{
    check_order(alpha, options);
    if (alpha == 0.0) return f(x);
    if (!(x < b)) {
        std::ostringstream os;
        os << "rl_right requires x < b, got b = " << b << ", x = " << x;
        throw DomainError(os.str());
    }
    return weighted_distance_integral([&f, x](double s) { return f(x + s); }, b - x, alpha, options.quad);
}

} // namespace phi_ineq
