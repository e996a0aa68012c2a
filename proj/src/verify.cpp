#include "phi_ineq/verify.hpp"

#include "phi_ineq/errors.hpp"
#include "phi_ineq/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <sstream>
#include <thread>
#include <tuple>

namespace phi_ineq {

std::string_view to_string(Theorem theorem)
{
    switch (theorem) {
    case Theorem::T1:
        return "T1";
    case Theorem::T2:
        return "T2";
    case Theorem::HH:
        return "HH";
    case Theorem::LEMMA1:
        return "LEMMA1";
    }
    return "?";
}

std::string_view to_string(Status status)
{
    switch (status) {
    case Status::PASS:
        return "PASS";
    case Status::FAIL:
        return "FAIL";
    case Status::HYPOTHESIS_UNMET:
        return "HYPOTHESIS_UNMET";
    case Status::ERROR:
        return "ERROR";
    }
    return "?";
}

std::optional<Theorem> theorem_from_string(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "t1") return Theorem::T1;
    if (lower == "t2") return Theorem::T2;
    if (lower == "hh") return Theorem::HH;
    if (lower == "lemma1") return Theorem::LEMMA1;
    return std::nullopt;
}

namespace {

ConvexityWitness check_hypothesis(const TestFunction& fn, const Interval& interval, const PhiKernel& kernel, double q,
                                  const ConvexityCheckOptions& options)
{
    const RealFn f2 = fn.f2;
    return check_phi_convex([f2, q](double t) { return std::pow(std::abs(f2(t)), q); }, kernel, interval, options);
}

struct Sides {
    double lhs;
    double rhs;
};

Sides theorem_sides(const TestFunction& fn, const EvalParams& params, const PhiKernel& kernel, Theorem theorem,
                    const BoundsQuadrature& quad, double rhs_scale)
{
    const double lhs = std::abs(s_f(fn, params, quad));
    const double rhs = theorem == Theorem::T1 ? theorem1_bound(fn, params, kernel, quad)
                                              : theorem2_bound(fn, params, kernel, quad);
    return {lhs, rhs * rhs_scale};
}

BoundReport evaluate_theorem(const TestFunction& fn, const EvalParams& params, const PhiKernel& kernel,
                             Theorem theorem, const VerifyOptions& options,
                             const std::optional<ConvexityWitness>& known_hypothesis)
{
    BoundReport r;
    r.function = fn.name;
    r.params = params;
    r.kernel = kernel;
    r.theorem = theorem;
    try {
        if (theorem != Theorem::T1 && theorem != Theorem::T2)
            throw DomainError("verify_point handles T1 and T2 only");
        params.validate();
        if (theorem == Theorem::T2) {
            if (!(params.q > 1.0)) throw DomainError("T2 needs q > 1");
            r.params.p = params.conjugate_p();
        }

        const ConvexityWitness hyp = known_hypothesis ? *known_hypothesis
                                                      : check_hypothesis(fn, params.interval, kernel, params.q,
                                                                         options.convexity);
        r.hypothesis_ok = hyp.holds;

        Sides sides = theorem_sides(fn, r.params, kernel, theorem, options.quad, options.rhs_scale);
        r.lhs = sides.lhs;
        r.rhs = sides.rhs;
        r.margin = r.rhs - r.lhs;

        if (theorem == Theorem::T1) {
            r.oracle_residuals["A1"] =
                std::abs(coef_a1(params.alpha, params.lambda) -
                         coef_a1_quadrature(params.alpha, params.lambda, options.quad.coefficients));
        } else {
            const double p = *r.params.p;
            const QuadratureSpec& cq = options.quad.coefficients;
            r.oracle_residuals["B_split"] = std::abs(coef_b(params.alpha, params.lambda, p, cq) -
                                                     coef_c1(params.alpha, params.lambda, p, cq) -
                                                     coef_c2(params.alpha, params.lambda, p, cq));
        }

        if (!r.hypothesis_ok) {
            r.status = Status::HYPOTHESIS_UNMET;
            std::ostringstream os;
            os << "|f''|^q is not " << kernel.label() << "-convex: violation " << hyp.worst_violation << " at (x, y, t) = ("
               << hyp.witness_point.x << ", " << hyp.witness_point.y << ", " << hyp.witness_point.t << ")";
            r.message = os.str();
        } else if (r.margin >= -options.tol) {
            r.status = Status::PASS;
        } else {
            r.status = Status::FAIL;
            try {
                const BoundsQuadrature tight = options.quad.scaled_tolerance(options.retry_factor);
                sides = theorem_sides(fn, r.params, kernel, theorem, tight, options.rhs_scale);
                r.lhs = sides.lhs;
                r.rhs = sides.rhs;
                r.margin = r.rhs - r.lhs;
                if (r.margin >= -options.tol) {
                    r.status = Status::PASS;
                    r.message = "passed after tightening quadrature";
                } else {
                    r.message = "bound violated; confirmed with tighter quadrature";
                }
            } catch (const Error& e) {
                r.message = std::string("bound violated; tighter rerun failed: ") + e.what();
            }
        }
    } catch (const std::exception& e) {
        r.status = Status::ERROR;
        r.message = e.what();
    }
    return r;
}

} // namespace

BoundReport verify_point(const TestFunction& fn, const EvalParams& params, const PhiKernel& kernel, Theorem theorem,
                         const VerifyOptions& options)
{
    return evaluate_theorem(fn, params, kernel, theorem, options, std::nullopt);
}

BoundReport lemma1_identity_check(const TestFunction& fn, const EvalParams& params, const VerifyOptions& options)
{
    BoundReport r;
    r.function = fn.name;
    r.params = params;
    r.theorem = Theorem::LEMMA1;
    r.hypothesis_ok = true;
    try {
        r.lhs = s_f(fn, params, options.quad);
        r.rhs = lemma1_rhs(fn, params, options.quad);
        r.margin = std::abs(r.lhs - r.rhs);
        r.oracle_residuals["identity"] = r.margin;
        r.status = r.margin <= 1e-8 * std::max(1.0, std::abs(r.lhs)) ? Status::PASS : Status::FAIL;
    } catch (const std::exception& e) {
        r.status = Status::ERROR;
        r.message = e.what();
    }
    return r;
}

BoundReport hermite_hadamard_check(const TestFunction& fn, const Interval& interval, const VerifyOptions& options)
{
    constexpr double kTol = 1e-10;
    BoundReport r;
    r.function = fn.name;
    r.params.interval = interval;
    r.params.x = 0.5 * (interval.a + interval.b);
    r.theorem = Theorem::HH;
    try {
        interval.validate();
        const ConvexityWitness hyp = check_phi_convex(fn.f, PhiKernel::constant(), interval, options.convexity);
        r.hypothesis_ok = hyp.holds;

        const double mid = fn.f(r.params.x);
        const double mean = integrate(fn.f, interval.a, interval.b, options.quad.coefficients).value / interval.length();
        const double ends = 0.5 * (fn.f(interval.a) + fn.f(interval.b));
        r.oracle_residuals["midpoint"] = mid;
        r.oracle_residuals["mean"] = mean;
        r.oracle_residuals["endpoint_average"] = ends;
        r.lhs = mean;
        r.rhs = ends;
        r.margin = std::min(mean - mid, ends - mean);
        if (!r.hypothesis_ok) {
            r.status = Status::HYPOTHESIS_UNMET;
            r.message = "f is not convex on the interval";
        } else {
            r.status = r.margin >= -kTol ? Status::PASS : Status::FAIL;
        }
    } catch (const std::exception& e) {
        r.status = Status::ERROR;
        r.message = e.what();
    }
    return r;
}

void SweepPlan::validate() const
{
    std::ostringstream problems;
    if (kernels.empty() && !function_names.empty()) problems << " kernel list is empty;";
    if (theorems.empty()) problems << " theorem list is empty;";
    for (Theorem t : theorems)
        if (t != Theorem::T1 && t != Theorem::T2) problems << " sweeps cover T1 and T2 only;";
    if (x_positions.empty()) problems << " x grid is empty;";
    if (lambdas.empty()) problems << " lambda grid is empty;";
    if (alphas.empty()) problems << " alpha grid is empty;";
    if (qs.empty()) problems << " q grid is empty;";
    for (double v : x_positions)
        if (!(v >= 0.0 && v <= 1.0)) problems << " x position " << v << " outside [0, 1];";
    for (double v : lambdas)
        if (!(v >= 0.0 && v <= 1.0)) problems << " lambda " << v << " outside [0, 1];";
    for (double v : alphas)
        if (!(v > 0.0 && std::isfinite(v))) problems << " alpha " << v << " must be > 0;";
    for (double v : qs)
        if (!(v >= 1.0 && std::isfinite(v))) problems << " q " << v << " must be >= 1;";
    if (interval && !(interval->a < interval->b)) problems << " interval needs a < b;";
    if (!(tol >= 0.0)) problems << " tol must be >= 0;";
    const std::string text = problems.str();
    if (!text.empty()) throw DomainError("invalid sweep plan:" + text);
}

SweepPlan default_sweep_plan()
{
    SweepPlan plan;
    for (const auto& fn : function_registry()) plan.function_names.push_back(fn.name);
    plan.kernels = {PhiKernel::constant(), PhiKernel::power(0.5), PhiKernel::mt()};
    plan.x_positions = {0.0, 0.25, 0.5, 0.75, 1.0};
    plan.lambdas = {0.0, 1.0 / 3.0, 1.0};
    plan.alphas = {0.5, 1.0, 2.0};
    plan.qs = {1.0, 2.0};
    return plan;
}

namespace {

struct SweepTask {
    std::size_t fn_index;
    std::size_t kernel_index;
    std::size_t q_index;
    Theorem theorem;
    EvalParams params;
};

bool report_less(const BoundReport& l, const BoundReport& r)
{
    const std::string lk = l.kernel.label();
    const std::string rk = r.kernel.label();
    return std::tie(l.function, lk, l.theorem, l.params.x, l.params.lambda, l.params.alpha, l.params.q) <
           std::tie(r.function, rk, r.theorem, r.params.x, r.params.lambda, r.params.alpha, r.params.q);
}

template <typename Fn> void parallel_for(std::size_t count, unsigned threads, Fn&& body)
{
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) body(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

} // namespace

std::vector<BoundReport> sweep(const SweepPlan& plan, const VerifyOptions& options, unsigned threads)
{
    plan.validate();
    if (plan.function_names.empty()) return {};

    std::vector<TestFunction> fns;
    for (const auto& name : plan.function_names) fns.push_back(lookup_function(name, plan.interval));

    VerifyOptions opts = options;
    opts.tol = plan.tol;

    std::vector<SweepTask> tasks;
    for (std::size_t fi = 0; fi < fns.size(); ++fi) {
        const Interval& d = fns[fi].domain;
        for (std::size_t ki = 0; ki < plan.kernels.size(); ++ki)
            for (Theorem theorem : plan.theorems)
                for (double xi : plan.x_positions)
                    for (double lambda : plan.lambdas)
                        for (double alpha : plan.alphas)
                            for (std::size_t qi = 0; qi < plan.qs.size(); ++qi) {
                                const double q = plan.qs[qi];
                                if (theorem == Theorem::T2 && !(q > 1.0)) continue;
                                EvalParams p;
                                p.interval = d;
                                p.x = xi == 1.0 ? d.b : d.a + xi * d.length();
                                p.lambda = lambda;
                                p.alpha = alpha;
                                p.q = q;
                                if (plan.kernels[ki].kind() == PhiKernel::Kind::PowerS) p.s = plan.kernels[ki].s();
                                tasks.push_back({fi, ki, qi, theorem, p});
                            }
    }

    // one convexity check per (function, kernel, q)
    const std::size_t nk = plan.kernels.size();
    const std::size_t nq = plan.qs.size();
    std::vector<std::optional<ConvexityWitness>> hypotheses(fns.size() * nk * nq);
    std::vector<std::string> hypothesis_errors(hypotheses.size());
    parallel_for(hypotheses.size(), threads, [&](std::size_t i) {
        const std::size_t fi = i / (nk * nq);
        const std::size_t ki = (i / nq) % nk;
        const std::size_t qi = i % nq;
        try {
            hypotheses[i] =
                check_hypothesis(fns[fi], fns[fi].domain, plan.kernels[ki], plan.qs[qi], opts.convexity);
        } catch (const std::exception& e) {
            hypothesis_errors[i] = e.what();
        }
    });

    std::vector<BoundReport> reports(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const SweepTask& task = tasks[i];
        const std::size_t h = (task.fn_index * nk + task.kernel_index) * nq + task.q_index;
        const TestFunction& fn = fns[task.fn_index];
        const PhiKernel& kernel = plan.kernels[task.kernel_index];
        if (!hypotheses[h]) {
            BoundReport r;
            r.function = fn.name;
            r.params = task.params;
            r.kernel = kernel;
            r.theorem = task.theorem;
            r.status = Status::ERROR;
            r.message = "convexity check failed: " + hypothesis_errors[h];
            reports[i] = std::move(r);
            return;
        }
        reports[i] = evaluate_theorem(fn, task.params, kernel, task.theorem, opts, hypotheses[h]);
    });

    std::stable_sort(reports.begin(), reports.end(), report_less);
    return reports;
}

SweepSummary summarize(const std::vector<BoundReport>& reports)
{
    SweepSummary s;
    for (const auto& r : reports) {
        switch (r.status) {
        case Status::PASS:
            ++s.pass;
            break;
        case Status::FAIL:
            ++s.fail;
            break;
        case Status::HYPOTHESIS_UNMET:
            ++s.hypothesis_unmet;
            break;
        case Status::ERROR:
            ++s.error;
            break;
        }
    }
    return s;
}

} // namespace phi_ineq
