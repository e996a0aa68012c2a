#include "doctest.h"

#include "oracles.hpp"
#include "phi_ineq/bounds.hpp"
#include "phi_ineq/errors.hpp"

#include <cmath>
#include <numbers>

using namespace phi_ineq;

namespace {

EvalParams unit_params(double x, double lambda, double alpha, double q = 1.0)
{
    EvalParams p;
    p.interval = {0.0, 1.0};
    p.x = x;
    p.lambda = lambda;
    p.alpha = alpha;
    p.q = q;
    return p;
}

const TestFunction& reg(const char* name)
{
    static std::vector<TestFunction> keep;
    keep.push_back(*find_registered(name));
    return keep.back();
}

// |t (lambda - t^alpha)|^p w(t) by Simpson on each side of the kink.
double simpson_coef(double alpha, double lambda, double p, const std::function<double(double)>& w)
{
    const double k = std::pow(lambda, 1.0 / alpha);
    return oracle::simpson_pieces(
        [&](double t) { return std::pow(std::abs(t * (lambda - std::pow(t, alpha))), p) * w(t); }, {0.0, k, 1.0},
        20000);
}

const double kAlphas[] = {0.5, 1.0, 2.0, 3.5};
const double kLambdas[] = {0.0, 0.25, 0.5, 0.75, 1.0};

} // namespace

TEST_CASE("s_f and the two-integral form on hand examples")
{
    const EvalParams mid = unit_params(0.5, 0.0, 1.0);
    CHECK(std::abs(s_f(reg("t^2"), mid) + 1.0 / 6.0) <= 1e-12);
    CHECK(std::abs(s_f(reg("t^3"), mid) + 0.25) <= 1e-12);
    CHECK(std::abs(lemma1_rhs(reg("t^2"), mid) + 1.0 / 6.0) <= 1e-12);
    CHECK(std::abs(lemma1_rhs(reg("t^3"), mid) + 0.25) <= 1e-12);

    const EvalParams odd = unit_params(0.3, 0.5, 1.5);
    CHECK(std::abs(s_f(reg("t"), odd)) <= 1e-12);
    CHECK(lemma1_rhs(reg("t"), odd) == 0.0);
}

TEST_CASE("s_f equals the two-integral form on random points")
{
    std::mt19937_64 gen(99);
    for (const auto& fn : function_registry()) {
        for (int i = 0; i < 20; ++i) {
            EvalParams p;
            p.interval = fn.domain;
            p.x = oracle::uniform(gen, fn.domain.a, fn.domain.b);
            p.lambda = oracle::uniform(gen, 0.0, 1.0);
            p.alpha = oracle::uniform(gen, 0.2, 3.0);
            const double lhs = s_f(fn, p);
            INFO(fn.name << " x=" << p.x << " lambda=" << p.lambda << " alpha=" << p.alpha);
            CHECK(std::abs(lhs - lemma1_rhs(fn, p)) <= 1e-8 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("s_f at the interval ends")
{
    for (double x : {0.0, 1.0}) {
        const EvalParams p = unit_params(x, 0.4, 0.7);
        const double v = s_f(reg("exp(t)"), p);
        CHECK(std::isfinite(v));
        CHECK(std::abs(v - lemma1_rhs(reg("exp(t)"), p)) <= 1e-9);
    }
}

TEST_CASE("A1 examples and closed form against quadrature")
{
    CHECK(std::abs(coef_a1(1, 0) - 1.0 / 3.0) <= 1e-15);
    CHECK(std::abs(coef_a1(1, 1) - 1.0 / 6.0) <= 1e-15);
    CHECK(std::abs(coef_a1(2, 1) - 0.25) <= 1e-15);
    for (double alpha : kAlphas)
        for (double lambda : kLambdas) {
            INFO(alpha << " " << lambda);
            CHECK(std::abs(coef_a1(alpha, lambda) - coef_a1_quadrature(alpha, lambda)) <= 1e-10);
            CHECK(std::abs(coef_a1(alpha, lambda) - simpson_coef(alpha, lambda, 1.0, [](double) { return 1.0; })) <= 1e-9);
        }
}

TEST_CASE("weighted coefficients")
{
    const PhiKernel one = PhiKernel::constant();
    CHECK(std::abs(coef_weighted(1, 0, one, WeightedCoef::A2) - 0.25) <= 1e-14);
    CHECK(std::abs(coef_weighted(1, 1, one, WeightedCoef::A2) - 1.0 / 12.0) <= 1e-14);
    CHECK(std::abs(coef_weighted(1, 1, one, WeightedCoef::A3) - 1.0 / 12.0) <= 1e-14);

    for (double alpha : kAlphas)
        for (double lambda : kLambdas) {
            INFO(alpha << " " << lambda);
            const double a2 = coef_weighted(alpha, lambda, one, WeightedCoef::A2);
            const double a3 = coef_weighted(alpha, lambda, one, WeightedCoef::A3);
            CHECK(std::abs(a3 - (coef_a1(alpha, lambda) - a2)) <= 1e-10);
            CHECK(std::abs(a2 - simpson_coef(alpha, lambda, 1.0, [](double t) { return t; })) <= 1e-9);
        }
}

TEST_CASE("weighted coefficients with singular kernels")
{
    // t phi(t) = t^s for the power kernel, so A2 = int |t(l - t^a)| t^s dt is smooth
    for (double s : {0.25, 0.5})
        for (double alpha : kAlphas)
            for (double lambda : kLambdas) {
                const double want = simpson_coef(alpha, lambda, 1.0, [s](double t) { return std::pow(t, s); });
                CHECK(std::abs(coef_weighted(alpha, lambda, PhiKernel::power(s), WeightedCoef::A2) - want) <= 1e-8);
            }
    // MT, lambda = 0, alpha = 1: A2 = int t^2 sqrt(t)/(2 sqrt(1-t)) = B(3.5, 0.5)/2
    const double mt_a2 = std::tgamma(3.5) * std::tgamma(0.5) / std::tgamma(4.0) / 2.0;
    CHECK(std::abs(coef_weighted(1, 0, PhiKernel::mt(), WeightedCoef::A2) - mt_a2) <= 1e-11);
    // A3 = int t^2 sqrt(1-t)/(2 sqrt(t)) = B(2.5, 1.5)/2
    const double mt_a3 = std::tgamma(2.5) * std::tgamma(1.5) / std::tgamma(4.0) / 2.0;
    CHECK(std::abs(coef_weighted(1, 0, PhiKernel::mt(), WeightedCoef::A3) - mt_a3) <= 1e-11);
}

TEST_CASE("B and its pieces")
{
    CHECK(std::abs(coef_b(1, 0, 2) - 0.2) <= 1e-14);
    CHECK(std::abs(coef_b(1, 1, 2) - 1.0 / 30.0) <= 1e-14);
    CHECK(std::abs(coef_b(1, 0.5, 2) - 1.0 / 30.0) <= 1e-14);
    for (double p : {1.5, 2.0, 3.0})
        for (double alpha : kAlphas)
            for (double lambda : kLambdas) {
                INFO(p << " " << alpha << " " << lambda);
                const double b = coef_b(alpha, lambda, p);
                CHECK(std::abs(b - (coef_c1(alpha, lambda, p) + coef_c2(alpha, lambda, p))) <= 1e-12);
                CHECK(std::abs(b - simpson_coef(alpha, lambda, p, [](double) { return 1.0; })) <= 1e-8);
            }
}

TEST_CASE("kernel mean")
{
    CHECK(std::abs(kernel_mean(PhiKernel::constant()) - 0.5) <= 1e-15);
    CHECK(std::abs(kernel_mean(PhiKernel::power(0.5)) - 1.0 / 1.5) <= 1e-12);
    CHECK(std::abs(kernel_mean(PhiKernel::mt()) - std::numbers::pi / 4.0) <= 1e-12);
}

TEST_CASE("printed closed forms")
{
    EvalParams p = unit_params(0.5, 1.0, 1.0);
    CHECK(std::abs(printed_coefficient(PrintedCoef::A2C, p).value - 1.0 / 12.0) <= 1e-15);
    CHECK(std::abs(printed_coefficient(PrintedCoef::A3C, p).value - 0.25) <= 1e-15);
    p.s = 1.0;
    CHECK(std::abs(printed_coefficient(PrintedCoef::A4, p).value - 5.0 / 12.0) <= 1e-15);
    CHECK(std::abs(oracle_coefficient(PrintedCoef::A4, p) - 1.0 / 12.0) <= 1e-14);

    // A2C matches its oracle everywhere on the grid
    for (double alpha : kAlphas)
        for (double lambda : kLambdas) {
            const EvalParams g = unit_params(0.5, lambda, alpha);
            CHECK(std::abs(printed_coefficient(PrintedCoef::A2C, g).value - oracle_coefficient(PrintedCoef::A2C, g)) <= 1e-10);
        }

    // complete Beta with a negative parameter is undefined
    EvalParams hb = unit_params(0.5, 0.5, 1.0, 2.0);
    CHECK_THROWS_AS(printed_coefficient(PrintedCoef::C2, hb), DomainError);
    CHECK_THROWS_AS(printed_coefficient(PrintedCoef::B_closed, hb), DomainError);
    CHECK(std::isfinite(printed_coefficient(PrintedCoef::C1, hb).value));

    for (auto name : {PrintedCoef::A2C, PrintedCoef::A3C, PrintedCoef::A4, PrintedCoef::A5, PrintedCoef::B_closed,
                      PrintedCoef::C1, PrintedCoef::C2})
        CHECK(printed_coef_from_string(to_string(name)) == name);
    CHECK_FALSE(printed_coef_from_string("A9").has_value());
}

TEST_CASE("power-mean bound examples")
{
    const PhiKernel one = PhiKernel::constant();
    CHECK(std::abs(theorem1_bound(reg("t^3"), unit_params(0.5, 0, 1), one) - 0.25) <= 1e-12);
    CHECK(std::abs(theorem1_bound(reg("t^2"), unit_params(0.5, 0, 1), one) - 1.0 / 6.0) <= 1e-12);
    CHECK(std::abs(theorem1_bound(reg("t^2"), unit_params(0.5, 1, 1), one) - 1.0 / 12.0) <= 1e-12);
    CHECK(std::abs(std::abs(s_f(reg("t^2"), unit_params(0.5, 1, 1))) - 1.0 / 12.0) <= 1e-12);
}

TEST_CASE("Hoelder bound examples")
{
    EvalParams p = unit_params(0.5, 0, 1, 2.0);
    CHECK(std::abs(theorem2_bound(reg("t^2"), p, PhiKernel::constant()) - std::sqrt(0.2) * 0.5) <= 1e-12);
    CHECK(std::abs(theorem2_bound(reg("t^2"), p, PhiKernel::mt()) - std::sqrt(0.2) * 0.25 * std::sqrt(2.0 * std::numbers::pi)) <= 1e-10);
    CHECK(theorem2_bound(reg("t"), p, PhiKernel::constant()) == 0.0);
    CHECK_THROWS_AS(theorem2_bound(reg("t^2"), unit_params(0.5, 0, 1, 1.0), PhiKernel::constant()), DomainError);
}

TEST_CASE("corollaries delegate to the theorems")
{
    EvalParams p = unit_params(0.5, 0, 1);
    CHECK(corollary_bound(Corollary::C1_phi1, reg("t^3"), p) == theorem1_bound(reg("t^3"), p, PhiKernel::constant()));
    EvalParams h = unit_params(0.5, 0, 1, 2.0);
    CHECK(std::abs(corollary_bound(Corollary::C4_phi1_holder, reg("t^2"), h) - std::sqrt(0.2) * 0.5) <= 1e-12);
    h.s = 1.0;
    CHECK(std::abs(corollary_bound(Corollary::C6_powers_holder, reg("exp(t)"), h) -
                   corollary_bound(Corollary::C4_phi1_holder, reg("exp(t)"), h)) <= 1e-12);
    EvalParams s = unit_params(0.3, 0.6, 1.4);
    s.s = 0.5;
    CHECK(corollary_bound(Corollary::C3_powers, reg("t^4"), s) == theorem1_bound(reg("t^4"), s, PhiKernel::power(0.5)));

    const auto presets = midpoint_presets({0, 2}, 1.5, 2.0);
    REQUIRE(presets.size() == 3);
    CHECK(presets[0].lambda == doctest::Approx(1.0 / 3.0));
    CHECK(presets[1].lambda == 0.0);
    CHECK(presets[2].lambda == 1.0);
    for (const auto& e : presets) CHECK(e.x == 1.0);
}

TEST_CASE("power(1) reduces to constant; bounds nonnegative and dominate on convex registry")
{
    std::mt19937_64 gen(4242);
    for (const char* name : {"t^2", "t^3", "t^4", "exp(t)", "-ln(t)"}) {
        const TestFunction& fn = reg(name);
        for (int i = 0; i < 10; ++i) {
            EvalParams p;
            p.interval = fn.domain;
            p.x = oracle::uniform(gen, fn.domain.a, fn.domain.b);
            p.lambda = oracle::uniform(gen, 0.0, 1.0);
            p.alpha = oracle::uniform(gen, 0.3, 3.0);
            p.q = i % 2 == 0 ? 1.0 : 2.0;
            const double t1c = theorem1_bound(fn, p, PhiKernel::constant());
            const double t1s = theorem1_bound(fn, p, PhiKernel::power(1.0));
            CHECK(std::abs(t1c - t1s) <= 1e-12 * std::max(1.0, t1c));
            const double lhs = std::abs(s_f(fn, p));
            CHECK(t1c >= lhs - 1e-9);
            if (p.q > 1.0) {
                const double t2c = theorem2_bound(fn, p, PhiKernel::constant());
                CHECK(std::abs(t2c - theorem2_bound(fn, p, PhiKernel::power(1.0))) <= 1e-12 * std::max(1.0, t2c));
                CHECK(t2c >= lhs - 1e-9);
            }
        }
    }
}

TEST_CASE("bounds at the interval ends and parameter validation")
{
    for (double x : {0.0, 1.0}) {
        const double v = theorem1_bound(reg("t^2"), unit_params(x, 0.5, 0.5), PhiKernel::mt());
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
    EvalParams bad = unit_params(1.5, 1.2, -1.0, 0.5);
    CHECK_THROWS_AS(bad.validate(), DomainError);
    try {
        bad.validate();
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("lambda") != std::string::npos);
        CHECK(msg.find("alpha") != std::string::npos);
    }
    EvalParams pq = unit_params(0.5, 0, 1, 2.0);
    pq.p = 3.0;
    CHECK_THROWS_AS(pq.validate(), DomainError);
    pq.p = 2.0;
    CHECK_NOTHROW(pq.validate());
}
