#include "doctest.h"

#include "phi_ineq/convexity.hpp"
#include "phi_ineq/errors.hpp"

#include <cmath>

using namespace phi_ineq;

namespace {

// Direct scan of the same grid, written out independently of the checker.
double brute_worst(const RealFn& g, double (*phi)(double), double a, double b, int n, double tol)
{
    double worst = -INFINITY;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j + 1 < n; ++j) {
                const double x = a + (b - a) * i / (n - 1);
                const double y = a + (b - a) * k / (n - 1);
                const double t = (j + 0.5) / (n - 1);
                const double lhs = g(t * x + (1 - t) * y);
                const double rhs = t * phi(t) * g(x) + (1 - t) * phi(1 - t) * g(y);
                worst = std::max(worst, lhs - rhs - tol * std::max(1.0, std::abs(rhs)));
            }
    return worst;
}

double phi_one(double) { return 1.0; }
double phi_mt(double t) { return 1.0 / (2.0 * std::sqrt(t) * std::sqrt(1.0 - t)); }

} // namespace

TEST_CASE("phi_eval examples")
{
    CHECK(phi_eval(PhiKernel::constant(), 0.3) == 1.0);
    CHECK(std::abs(phi_eval(PhiKernel::power(0.5), 0.25) - 2.0) <= 1e-15);
    CHECK(std::abs(phi_eval(PhiKernel::mt(), 0.5) - 1.0) <= 1e-15);
    for (double t : {0.0, 1.0, -0.2, 1.5}) CHECK_THROWS_AS(phi_eval(PhiKernel::mt(), t), DomainError);
    CHECK_THROWS_AS(PhiKernel::power(0.0), DomainError);
    CHECK_THROWS_AS(PhiKernel::power(1.5), DomainError);
}

TEST_CASE("kernel labels and exponents")
{
    CHECK(PhiKernel::constant().label() == "constant");
    CHECK(PhiKernel::power(0.5).label() == "power(0.5)");
    CHECK(PhiKernel::mt().label() == "mt");
    CHECK(PhiKernel::power(0.25).left_exponent() == -0.75);
    CHECK(PhiKernel::mt().left_exponent() == -0.5);
    CHECK(PhiKernel::mt().right_exponent() == -0.5);
    CHECK(PhiKernel::constant().left_exponent() == 0.0);
}

TEST_CASE("custom table kernel")
{
    const PhiKernel k = PhiKernel::table({{0.1, 3.0}, {0.4, 1.5}, {0.7, 1.2}, {0.9, 1.0}});
    CHECK(k.label() == "table(4)");
    CHECK(phi_eval(k, 0.4) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(phi_eval(k, 0.05) == 3.0);
    CHECK(phi_eval(k, 0.95) == 1.0);
    // monotone data stays monotone between nodes
    double prev = INFINITY;
    for (double t = 0.1; t <= 0.9; t += 0.01) {
        const double v = phi_eval(k, t);
        CHECK(v <= prev + 1e-15);
        CHECK(v >= 1.0 - 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(PhiKernel::table({{0.2, 1.0}}), DomainError);
    CHECK_THROWS_AS(PhiKernel::table({{0.0, 1.0}, {0.5, 1.0}}), DomainError);
    CHECK_THROWS_AS(PhiKernel::table({{0.2, 1.0}, {0.5, -1.0}}), DomainError);
    CHECK_THROWS_AS(PhiKernel::table({{0.5, 1.0}, {0.2, 1.0}}), DomainError);

    const PhiKernel flat = PhiKernel::table({{0.1, 1.0}, {0.5, 1.0}, {0.9, 1.0}});
    const auto g = [](double t) { return t * t; };
    CHECK(check_phi_convex(g, flat, {0, 1}).worst_violation == check_phi_convex(g, PhiKernel::constant(), {0, 1}).worst_violation);
}

TEST_CASE("check_phi_convex examples")
{
    const ConvexityWitness square = check_phi_convex([](double t) { return t * t; }, PhiKernel::constant(), {0, 1}, {21, 1e-12});
    CHECK(square.holds);
    CHECK(square.worst_violation <= 0.0);

    const ConvexityWitness concave = check_phi_convex([](double t) { return -t * t; }, PhiKernel::constant(), {0, 1});
    CHECK_FALSE(concave.holds);
    CHECK(concave.worst_violation > 0.0);
    CHECK_FALSE(concave.nonnegative);
    const WitnessPoint& w = concave.witness_point;
    const double lhs = -std::pow(w.t * w.x + (1 - w.t) * w.y, 2);
    const double rhs = -w.t * w.x * w.x - (1 - w.t) * w.y * w.y;
    CHECK(lhs > rhs);

    CHECK(check_phi_convex([](double) { return 4.0; }, PhiKernel::mt(), {0, 1}).holds);
    CHECK_THROWS_AS(check_phi_convex([](double t) { return t - 0.5; }, PhiKernel::mt(), {0, 1}), DomainError);
    CHECK_THROWS_AS(check_phi_convex([](double t) { return t; }, PhiKernel::constant(), {0, 1}, {2, 1e-9}), DomainError);
}

TEST_CASE("checker matches a direct scan of the grid")
{
    const std::vector<RealFn> fns = {[](double t) { return t * t * t; }, [](double t) { return std::sin(3 * t); },
                                     [](double t) { return std::exp(-t); }};
    for (const auto& g : fns) {
        const ConvexityWitness c = check_phi_convex(g, PhiKernel::constant(), {-1, 2}, {17, 1e-9});
        CHECK(c.worst_violation == doctest::Approx(brute_worst(g, phi_one, -1, 2, 17, 1e-9)).epsilon(1e-12));
    }
    const auto pos = [](double t) { return std::sqrt(t); };
    const ConvexityWitness m = check_phi_convex(pos, PhiKernel::mt(), {0, 1}, {17, 1e-9});
    CHECK(m.worst_violation == doctest::Approx(brute_worst(pos, phi_mt, 0, 1, 17, 1e-9)).epsilon(1e-12));
}

TEST_CASE("power(1) coincides with constant")
{
    const std::vector<RealFn> fns = {[](double t) { return t * t; }, [](double t) { return -t * t; },
                                     [](double t) { return std::exp(t); }, [](double t) { return std::sqrt(t); }};
    for (const auto& g : fns) {
        const ConvexityWitness c = check_phi_convex(g, PhiKernel::constant(), {0, 1});
        const ConvexityWitness s = check_phi_convex(g, PhiKernel::power(1.0), {0, 1});
        CHECK(c.holds == s.holds);
        CHECK(c.worst_violation == s.worst_violation);
    }
}

TEST_CASE("verdict invariant under positive scaling and reflection")
{
    const std::vector<RealFn> fns = {[](double t) { return t * t; }, [](double t) { return std::exp(t); },
                                     [](double t) { return std::sqrt(t + 0.1); }, [](double t) { return 1.0 + t * t * t; }};
    const std::vector<PhiKernel> kernels = {PhiKernel::constant(), PhiKernel::power(0.5), PhiKernel::mt()};
    for (const auto& g : fns)
        for (const auto& k : kernels) {
            const bool base = check_phi_convex(g, k, {0, 1}).holds;
            for (double c : {0.5, 3.0}) CHECK(check_phi_convex([&](double t) { return c * g(t); }, k, {0, 1}).holds == base);
            // (x, y, t) -> (1-x, 1-y, t) maps the sampled set onto itself
            CHECK(check_phi_convex([&](double t) { return g(1.0 - t); }, k, {0, 1}).holds == base);
        }
}

TEST_CASE("wider classes accept more functions")
{
    // sqrt is concave: not convex, but s-convex and MT-convex as a nonnegative
    // function with sqrt(tx+(1-t)y) <= sqrt(t) sqrt(x) + sqrt(1-t) sqrt(y)
    const auto g = [](double t) { return std::sqrt(t); };
    CHECK_FALSE(check_phi_convex(g, PhiKernel::constant(), {0, 1}).holds);
    CHECK(check_phi_convex(g, PhiKernel::power(0.5), {0, 1}).holds);
}
