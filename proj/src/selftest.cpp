#include "phi_ineq/selftest.hpp"

#include "phi_ineq/bounds.hpp"
#include "phi_ineq/fracint.hpp"
#include "phi_ineq/output.hpp"
#include "phi_ineq/report.hpp"
#include "phi_ineq/specfun.hpp"
#include "phi_ineq/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace phi_ineq {

bool SelftestResult::all_passed() const
{
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

namespace {

std::string sci(double v)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

double uniform(std::mt19937_64& gen, double lo, double hi)
{
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
}

SelftestCheck identity_battery()
{
    std::mt19937_64 gen(20240601);
    double worst = 0.0;
    int failures = 0;
    int n = 0;
    for (const char* name : {"t^2", "t^3", "t^4", "exp(t)", "-ln(t)"}) {
        const TestFunction fn = *find_registered(name);
        for (int i = 0; i < 20; ++i) {
            EvalParams p;
            p.interval = fn.domain;
            p.x = uniform(gen, fn.domain.a, fn.domain.b);
            p.lambda = uniform(gen, 0.0, 1.0);
            p.alpha = uniform(gen, 0.2, 3.0);
            const BoundReport r = lemma1_identity_check(fn, p);
            ++n;
            if (r.status != Status::PASS) ++failures;
            worst = std::max(worst, r.margin / std::max(1.0, std::abs(r.lhs)));
        }
    }
    return {"identity-battery", failures == 0,
            std::to_string(n) + " points, worst relative residual " + sci(worst)};
}

SelftestCheck equality_cases()
{
    struct Case {
        const char* fn;
        double lambda;
        double lhs;
    };
    const Case cases[] = {{"t^3", 0.0, 0.25}, {"t^2", 0.0, 1.0 / 6.0}, {"t^2", 1.0, 1.0 / 12.0}};
    bool ok = true;
    double worst = 0.0;
    for (const Case& c : cases) {
        EvalParams p;
        p.x = 0.5;
        p.lambda = c.lambda;
        const BoundReport r = verify_point(*find_registered(c.fn), p, PhiKernel::constant(), Theorem::T1);
        const double gap = std::abs(r.rhs - r.lhs);
        worst = std::max(worst, gap);
        ok = ok && r.status == Status::PASS && gap <= 1e-9 && std::abs(r.lhs - c.lhs) <= 1e-12;
    }
    return {"equality-cases", ok, "3 cases, worst |rhs - lhs| " + sci(worst)};
}

SelftestCheck coefficient_oracles()
{
    double worst_a1 = 0.0;
    double worst_a3 = 0.0;
    for (double alpha : {0.5, 1.0, 2.0, 3.5})
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double a1 = coef_a1(alpha, lambda);
            worst_a1 = std::max(worst_a1, std::abs(a1 - coef_a1_quadrature(alpha, lambda)));
            const double a2 = coef_weighted(alpha, lambda, PhiKernel::constant(), WeightedCoef::A2);
            const double a3 = coef_weighted(alpha, lambda, PhiKernel::constant(), WeightedCoef::A3);
            worst_a3 = std::max(worst_a3, std::abs(a3 - (a1 - a2)));
        }
    return {"coefficient-oracles", worst_a1 <= 1e-10 && worst_a3 <= 1e-10,
            "A1 closed vs quadrature " + sci(worst_a1) + ", A3 vs A1 - A2 " + sci(worst_a3)};
}

SelftestCheck ledger_findings(std::vector<std::string>& findings)
{
    struct Expect {
        PrintedCoef name;
        double alpha;
        double lambda;
        double s;
        double printed;
        double oracle;
    };
    const Expect expected[] = {{PrintedCoef::A3C, 1, 1, 1, 0.25, 1.0 / 12.0},
                               {PrintedCoef::A3C, 1, 0, 1, -1.0 / 12.0, 1.0 / 12.0},
                               {PrintedCoef::A4, 1, 1, 1, 5.0 / 12.0, 1.0 / 12.0}};
    bool ok = true;
    for (const Expect& e : expected) {
        EvalParams p;
        p.alpha = e.alpha;
        p.lambda = e.lambda;
        p.s = e.s;
        const DiscrepancyEntry d = compare_printed(e.name, p);
        const bool match = d.verdict == Verdict::DISAGREES && d.printed && std::abs(*d.printed - e.printed) <= 1e-10 &&
                           std::abs(d.oracle - e.oracle) <= 1e-10;
        ok = ok && match;
        std::string where = "(alpha, lambda) = (" + format_double(e.alpha) + ", " + format_double(e.lambda);
        if (e.name == PrintedCoef::A4) where += ", s = " + format_double(e.s);
        findings.push_back(std::string(to_string(e.name)) + " at " + where + "): printed " +
                           (d.printed ? format_double(*d.printed) : std::string("undefined")) + " vs quadrature " +
                           format_double(d.oracle) + ", " + std::string(to_string(d.verdict)));
    }
    return {"ledger-findings", ok, "printed A3 and A4 disagree with quadrature at the expected points"};
}

SelftestCheck default_sweep()
{
    const auto reports = sweep(default_sweep_plan());
    const SweepSummary s = summarize(reports);
    const bool ok = s.total() >= 500 && s.fail == 0 && s.error == 0 && s.hypothesis_unmet >= 1;
    return {"default-sweep", ok,
            std::to_string(s.total()) + " points: " + std::to_string(s.pass) + " PASS, " + std::to_string(s.fail) +
                " FAIL, " + std::to_string(s.hypothesis_unmet) + " HYPOTHESIS_UNMET, " + std::to_string(s.error) +
                " ERROR"};
}

SelftestCheck special_functions()
{
    const double g_half = std::abs(gamma(0.5) / std::sqrt(std::numbers::pi) - 1.0);
    const double g_five = std::abs(gamma(5.0) / 24.0 - 1.0);
    const double gauss = std::abs(gauss_2f1(1, 3, 5, 1) - 4.0);
    const double ib = std::abs(incomplete_beta(0.5, 2.0, -0.5) - (3.0 * std::sqrt(2.0) - 4.0));
    const bool ok = g_half <= 1e-12 && g_five <= 1e-12 && gauss <= 1e-10 && ib <= 1e-9;
    return {"special-functions", ok,
            "gamma " + sci(std::max(g_half, g_five)) + ", 2F1 at 1 " + sci(gauss) + ", incomplete beta " + sci(ib)};
}

SelftestCheck fractional_integrals()
{
    double worst = 0.0;
    for (int beta = 0; beta <= 3; ++beta)
        for (double alpha : {0.3, 0.5, 1.0, 1.7}) {
            const double want = std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 1.0) * std::pow(1.3, alpha + beta);
            const double left = rl_left([beta](double t) { return std::pow(t, beta); }, 0.0, alpha, 1.3);
            const double right = rl_right([beta](double t) { return std::pow(1.3 - t, beta); }, 1.3, alpha, 0.0);
            worst = std::max({worst, std::abs(left / want - 1.0), std::abs(right / want - 1.0)});
        }
    double mirror = 0.0;
    const std::function<double(double)> f = [](double t) { return std::exp(t); };
    for (double alpha : {0.3, 1.0, 2.5})
        for (double x : {0.3, 0.6}) {
            const double right = rl_right(f, 1.0, alpha, x);
            const double left = rl_left([&](double t) { return f(1.0 - t); }, 0.0, alpha, 1.0 - x);
            mirror = std::max(mirror, std::abs(right - left));
        }
    return {"fractional-integrals", worst <= 1e-8 && mirror <= 1e-10,
            "power law worst relative error " + sci(worst) + ", mirror symmetry " + sci(mirror)};
}

SelftestCheck hermite_hadamard()
{
    bool ok = true;
    std::string detail;
    for (const char* name : {"t^2", "exp(t)", "t"}) {
        const BoundReport r = hermite_hadamard_check(*find_registered(name), {0.0, 1.0});
        ok = ok && r.status == Status::PASS;
        if (!detail.empty()) detail += "; ";
        detail += std::string(name) + ": " + format_double(r.oracle_residuals.at("midpoint")) + " <= " +
                  format_double(r.oracle_residuals.at("mean")) + " <= " +
                  format_double(r.oracle_residuals.at("endpoint_average"));
    }
    return {"hermite-hadamard", ok, detail};
}

} // namespace

SelftestResult run_selftest()
{
    SelftestResult result;
    const std::vector<std::pair<std::string, std::function<SelftestCheck()>>> steps = {
        {"identity-battery", identity_battery},
        {"equality-cases", equality_cases},
        {"coefficient-oracles", coefficient_oracles},
        {"ledger-findings", [&] { return ledger_findings(result.findings); }},
        {"default-sweep", default_sweep},
        {"special-functions", special_functions},
        {"fractional-integrals", fractional_integrals},
        {"hermite-hadamard", hermite_hadamard},
    };
    for (const auto& [name, step] : steps) {
        try {
            result.checks.push_back(step());
        } catch (const std::exception& e) {
            result.checks.push_back({name, false, std::string("threw: ") + e.what()});
        }
    }
    return result;
}

void print_selftest(std::ostream& os, const SelftestResult& result)
{
    int passed = 0;
    for (const auto& c : result.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        passed += c.passed ? 1 : 0;
    }
    for (const auto& f : result.findings) os << "finding " << f << '\n';
    os << "selftest: " << passed << "/" << result.checks.size() << " checks passed";
    if (!result.findings.empty()) os << "; expected discrepancy: " << result.findings.front();
    os << '\n';
}

} // namespace phi_ineq
