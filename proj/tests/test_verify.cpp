#include "doctest.h"

#include "phi_ineq/errors.hpp"
#include "phi_ineq/verify.hpp"

#include <cmath>

using namespace phi_ineq;

namespace {

EvalParams unit_params(double x, double lambda, double alpha, double q = 1.0)
{
    EvalParams p;
    p.x = x;
    p.lambda = lambda;
    p.alpha = alpha;
    p.q = q;
    return p;
}

TestFunction fn(const char* name) { return *find_registered(name); }

} // namespace

TEST_CASE("verify_point examples")
{
    const BoundReport eq = verify_point(fn("t^3"), unit_params(0.5, 0, 1), PhiKernel::constant(), Theorem::T1);
    CHECK(eq.status == Status::PASS);
    CHECK(eq.hypothesis_ok);
    CHECK(std::abs(eq.margin) <= 1e-9);
    CHECK(std::abs(eq.lhs - 0.25) <= 1e-12);

    const BoundReport holder = verify_point(fn("t^2"), unit_params(0.5, 0, 1, 2.0), PhiKernel::constant(), Theorem::T2);
    CHECK(holder.status == Status::PASS);
    CHECK(std::abs(holder.margin - (std::sqrt(0.2) * 0.5 - 1.0 / 6.0)) <= 1e-10);
    REQUIRE(holder.params.p.has_value());
    CHECK(*holder.params.p == 2.0);

    const BoundReport control =
        verify_point(fn("sqrt_control"), unit_params(0.5, 0, 1), PhiKernel::constant(), Theorem::T1);
    CHECK(control.status == Status::HYPOTHESIS_UNMET);
    CHECK_FALSE(control.hypothesis_ok);
    CHECK_FALSE(control.message.empty());
}

TEST_CASE("verify_point degrades to ERROR")
{
    const BoundReport t2q1 = verify_point(fn("t^2"), unit_params(0.5, 0, 1, 1.0), PhiKernel::constant(), Theorem::T2);
    CHECK(t2q1.status == Status::ERROR);
    const BoundReport bad = verify_point(fn("t^2"), unit_params(0.5, 1.5, 1), PhiKernel::constant(), Theorem::T1);
    CHECK(bad.status == Status::ERROR);
    CHECK(bad.message.find("lambda") != std::string::npos);
    const BoundReport hh = verify_point(fn("t^2"), unit_params(0.5, 0, 1), PhiKernel::constant(), Theorem::HH);
    CHECK(hh.status == Status::ERROR);
}

TEST_CASE("verify_point at the interval ends")
{
    for (double x : {0.0, 1.0})
        for (const PhiKernel& k : {PhiKernel::constant(), PhiKernel::power(0.5), PhiKernel::mt()}) {
            const BoundReport r = verify_point(fn("exp(t)"), unit_params(x, 0.5, 0.5, 2.0), k, Theorem::T2);
            CHECK(r.status == Status::PASS);
            CHECK(std::isfinite(r.rhs));
        }
}

TEST_CASE("fault injection turns an equality case into FAIL")
{
    VerifyOptions opts;
    opts.rhs_scale = 0.5;
    const BoundReport r = verify_point(fn("t^3"), unit_params(0.5, 0, 1), PhiKernel::constant(), Theorem::T1, opts);
    CHECK(r.status == Status::FAIL);
    CHECK(r.margin < 0.0);
    CHECK(r.message.find("tighter") != std::string::npos);
}

TEST_CASE("lemma1_identity_check examples")
{
    const BoundReport cubic = lemma1_identity_check(fn("t^3"), unit_params(0.5, 0, 1));
    CHECK(cubic.status == Status::PASS);
    CHECK(std::abs(cubic.lhs + 0.25) <= 1e-12);
    CHECK(std::abs(cubic.rhs + 0.25) <= 1e-12);

    const BoundReport lin = lemma1_identity_check(fn("t"), unit_params(0.3, 0.5, 1.5));
    CHECK(lin.status == Status::PASS);
    CHECK(std::abs(lin.lhs) <= 1e-12);

    const BoundReport e = lemma1_identity_check(fn("exp(t)"), unit_params(0.3, 0.7, 2.5));
    CHECK(e.status == Status::PASS);
    CHECK(e.margin <= 1e-8);

    // a wrong second derivative breaks the identity
    TestFunction wrong = fn("t^3");
    wrong.f2 = [](double t) { return 5.0 * t; };
    CHECK(lemma1_identity_check(wrong, unit_params(0.5, 0, 1)).status == Status::FAIL);
}

TEST_CASE("hermite_hadamard_check examples")
{
    const BoundReport sq = hermite_hadamard_check(fn("t^2"), {0, 1});
    CHECK(sq.status == Status::PASS);
    CHECK(std::abs(sq.oracle_residuals.at("midpoint") - 0.25) <= 1e-15);
    CHECK(std::abs(sq.oracle_residuals.at("mean") - 1.0 / 3.0) <= 1e-14);
    CHECK(std::abs(sq.oracle_residuals.at("endpoint_average") - 0.5) <= 1e-15);

    const BoundReport ex = hermite_hadamard_check(fn("exp(t)"), {0, 1});
    CHECK(ex.status == Status::PASS);
    CHECK(std::abs(ex.oracle_residuals.at("midpoint") - std::exp(0.5)) <= 1e-14);
    CHECK(std::abs(ex.oracle_residuals.at("mean") - (std::exp(1.0) - 1.0)) <= 1e-13);
    CHECK(std::abs(ex.oracle_residuals.at("endpoint_average") - (1.0 + std::exp(1.0)) / 2.0) <= 1e-14);

    const BoundReport lin = hermite_hadamard_check(fn("t"), {0, 1});
    CHECK(lin.status == Status::PASS);
    CHECK(std::abs(lin.margin) <= 1e-14);

    const BoundReport concave = hermite_hadamard_check(function_from_expression("-t^2", {0, 1}), {0, 1});
    CHECK(concave.status == Status::HYPOTHESIS_UNMET);
}

TEST_CASE("sweep examples")
{
    SweepPlan plan;
    plan.function_names = {"t^2", "t^3", "exp(t)"};
    plan.kernels = {PhiKernel::constant()};
    plan.theorems = {Theorem::T1};
    plan.x_positions = {0.25, 0.5, 0.75};
    plan.lambdas = {0.0, 1.0 / 3.0, 1.0};
    plan.alphas = {0.5, 1.0, 2.0};
    plan.qs = {1.0, 2.0};
    const auto reports = sweep(plan);
    CHECK(reports.size() == 162);
    CHECK(summarize(reports).fail == 0);
    CHECK(summarize(reports).pass == 162);
    CHECK(std::is_sorted(reports.begin(), reports.end(), [](const BoundReport& l, const BoundReport& r) {
        return std::tie(l.function, l.params.x) < std::tie(r.function, r.params.x);
    }));

    SweepPlan empty = plan;
    empty.function_names.clear();
    CHECK(sweep(empty).empty());

    SweepPlan bad = plan;
    bad.lambdas.push_back(1.5);
    CHECK_THROWS_AS(sweep(bad), DomainError);
}

TEST_CASE("sweep output does not depend on thread count")
{
    SweepPlan plan = default_sweep_plan();
    plan.function_names = {"t^4", "sqrt_control"};
    plan.alphas = {0.5, 2.0};
    const auto one = sweep(plan, {}, 1);
    const auto many = sweep(plan, {}, 4);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].function == many[i].function);
        CHECK(one[i].lhs == many[i].lhs);
        CHECK(one[i].rhs == many[i].rhs);
        CHECK(one[i].status == many[i].status);
    }
}

TEST_CASE("default sweep")
{
    const auto reports = sweep(default_sweep_plan());
    const SweepSummary s = summarize(reports);
    CHECK(s.total() >= 500);
    CHECK(s.fail == 0);
    CHECK(s.error == 0);
    CHECK(s.hypothesis_unmet >= 1);
    for (const auto& r : reports) {
        if (r.status == Status::HYPOTHESIS_UNMET) CHECK(r.function == "sqrt_control");
        CHECK(r.lhs >= 0.0);
    }
}

TEST_CASE("midpoint presets agree with direct bounds")
{
    for (const EvalParams& p : midpoint_presets({0, 1}, 1.5, 2.0)) {
        const BoundReport r = verify_point(fn("exp(t)"), p, PhiKernel::constant(), Theorem::T1);
        CHECK(std::abs(r.rhs - theorem1_bound(fn("exp(t)"), p, PhiKernel::constant())) <= 1e-12);
    }
}

TEST_CASE("names")
{
    CHECK(to_string(Theorem::LEMMA1) == "LEMMA1");
    CHECK(theorem_from_string("T2") == Theorem::T2);
    CHECK(theorem_from_string("hh") == Theorem::HH);
    CHECK_FALSE(theorem_from_string("t3").has_value());
    CHECK(to_string(Status::HYPOTHESIS_UNMET) == "HYPOTHESIS_UNMET");
}
