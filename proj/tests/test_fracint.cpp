#include "doctest.h"

#include "oracles.hpp"
#include "phi_ineq/errors.hpp"
#include "phi_ineq/fracint.hpp"

#include <cmath>

using namespace phi_ineq;

namespace {

// Gamma(beta+1)/Gamma(alpha+beta+1) * h^(alpha+beta), via the C library.
double power_law(double beta, double alpha, double h)
{
    return std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 1.0) * std::pow(h, alpha + beta);
}

} // namespace

TEST_CASE("rl_left examples")
{
    CHECK(std::abs(rl_left([](double) { return 1.0; }, 0, 1, 1) - 1.0) <= 1e-12);
    CHECK(std::abs(rl_left([](double t) { return t * t; }, 0, 1, 1) - 1.0 / 3.0) <= 1e-12);
    CHECK(std::abs(rl_left([](double t) { return t; }, 0, 0.5, 1) - 0.7522527780636750) <= 1e-10);
}

TEST_CASE("rl_right examples")
{
    CHECK(std::abs(rl_right([](double) { return 1.0; }, 1, 1, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(rl_right([](double t) { return t; }, 1, 1, 0) - 0.5) <= 1e-12);
    CHECK(std::abs(rl_right([](double t) { return 1.0 - t; }, 1, 0.5, 0) - 0.7522527780636750) <= 1e-10);
}

TEST_CASE("power law for left and right integrals")
{
    for (double a : {0.0, -0.7, 2.0}) {
        const double x = a + 1.3;
        for (int beta = 0; beta <= 3; ++beta)
            for (double alpha : {0.3, 0.5, 1.0, 1.7}) {
                auto f = [=](double t) { return std::pow(t - a, beta); };
                const double want = power_law(beta, alpha, x - a);
                INFO("a=" << a << " beta=" << beta << " alpha=" << alpha);
                CHECK(oracle::rel_err(rl_left(f, a, alpha, x), want) <= 1e-8);
                auto g = [=](double t) { return std::pow(x - t, beta); };
                CHECK(oracle::rel_err(rl_right(g, x, alpha, a), want) <= 1e-8);
            }
    }
}

TEST_CASE("order one reduces to the plain integral")
{
    const std::vector<RealFn> golden = {[](double t) { return std::exp(t); }, [](double t) { return std::cos(3 * t); },
                                        [](double t) { return t * t * t - t; }};
    for (const auto& f : golden) {
        const double plain = oracle::simpson(f, 0.2, 0.9, 2000);
        CHECK(std::abs(rl_left(f, 0.2, 1.0, 0.9) - plain) <= 1e-11);
        CHECK(std::abs(rl_right(f, 0.9, 1.0, 0.2) - plain) <= 1e-11);
    }
}

TEST_CASE("mirror symmetry")
{
    const double a = 0.25;
    const double b = 1.75;
    const std::vector<RealFn> fns = {[](double t) { return std::exp(t); }, [](double t) { return t * t * t; },
                                     [](double t) { return std::sin(2 * t) + 1.0; }};
    for (const auto& f : fns)
        for (double alpha : {0.3, 0.5, 1.0, 2.5})
            for (double x : {0.3, 1.0, 1.6}) {
                const double right = rl_right(f, b, alpha, x);
                const double left = rl_left([&](double t) { return f(a + b - t); }, a, alpha, a + b - x);
                CHECK(std::abs(right - left) <= 1e-10);
            }
}

TEST_CASE("semigroup property on cubic polynomials")
{
    const std::vector<RealFn> polys = {[](double) { return 1.0; }, [](double t) { return 2.0 * t - 1.0; },
                                       [](double t) { return t * t + 0.5 * t; },
                                       [](double t) { return t * t * t - 2.0 * t * t + 0.3; }};
    for (const auto& f : polys)
        for (double a1 : {0.5, 1.0})
            for (double a2 : {0.5, 1.0}) {
                auto inner = [&](double y) { return y <= 0.0 ? 0.0 : rl_left(f, 0.0, a2, y); };
                const double composed = rl_left(inner, 0.0, a1, 1.0);
                const double direct = rl_left(f, 0.0, a1 + a2, 1.0);
                CHECK(std::abs(composed - direct) <= 1e-7);
            }
}

TEST_CASE("fractional integral errors and order zero")
{
    auto f = [](double t) { return t + 3.0; };
    CHECK_THROWS_AS(rl_left(f, 0, 0.5, 0), DomainError);
    CHECK_THROWS_AS(rl_left(f, 0, -1.0, 1), DomainError);
    CHECK_THROWS_AS(rl_left(f, 0, 0.0, 1), DomainError);
    CHECK_THROWS_AS(rl_right(f, 1, 0.5, 1), DomainError);

    FracIntOptions identity;
    identity.zero_order_identity = true;
    CHECK(rl_left(f, 0, 0.0, 0.7, identity) == f(0.7));
    CHECK(rl_right(f, 1, 0.0, 0.2, identity) == f(0.2));

    Interval bad{1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    Interval ok{-2.0, 3.0};
    CHECK_NOTHROW(ok.validate());
}
