#pragma once

#include "phi_ineq/bounds.hpp"
#include "phi_ineq/convexity.hpp"
#include "phi_ineq/functions.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phi_ineq {

enum class Theorem { T1, T2, HH, LEMMA1 };
enum class Status { PASS, FAIL, HYPOTHESIS_UNMET, ERROR };

std::string_view to_string(Theorem theorem);
std::string_view to_string(Status status);
// Accepts t1, t2, hh, lemma1 in any case.
std::optional<Theorem> theorem_from_string(std::string_view text);

struct BoundReport {
    std::string function;
    EvalParams params;
    PhiKernel kernel;
    Theorem theorem = Theorem::T1;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool hypothesis_ok = false;
    std::map<std::string, double> oracle_residuals;
    Status status = Status::ERROR;
    std::string message;
};

struct VerifyOptions {
    // Margins down to -tol still count as PASS.
    double tol = 1e-9;
    BoundsQuadrature quad;
    ConvexityCheckOptions convexity;
    // Multiplies every theorem bound before the comparison. Anything but 1
    // corrupts the bound on purpose; used to exercise the FAIL path.
    double rhs_scale = 1.0;
    // A FAIL is recomputed once with all quadrature tolerances scaled by this.
    double retry_factor = 0.1;
};

// T1 or T2 at one point: |f''|^q is checked for phi-convexity on the
// interval, lhs = |S_f|, rhs = theorem bound, margin = rhs - lhs.
BoundReport verify_point(const TestFunction& fn, const EvalParams& params, const PhiKernel& kernel, Theorem theorem,
                         const VerifyOptions& options = {});

// S_f against its two-integral form; PASS when they agree to 1e-8 relative.
BoundReport lemma1_identity_check(const TestFunction& fn, const EvalParams& params, const VerifyOptions& options = {});

// f((a+b)/2) <= mean of f <= (f(a)+f(b))/2 for convex f, tolerance 1e-10.
// lhs is the integral mean, rhs the endpoint average; residuals hold all three values.
BoundReport hermite_hadamard_check(const TestFunction& fn, const Interval& interval, const VerifyOptions& options = {});

struct SweepPlan {
    std::vector<std::string> function_names;
    std::vector<PhiKernel> kernels;
    std::vector<Theorem> theorems = {Theorem::T1, Theorem::T2};
    // Positions in [0, 1] relative to each function's domain: x = a + xi (b - a).
    std::vector<double> x_positions;
    std::vector<double> lambdas;
    std::vector<double> alphas;
    std::vector<double> qs;
    // Replaces every function's own domain when set.
    std::optional<Interval> interval;
    double tol = 1e-9;

    // Throws DomainError listing every violation.
    void validate() const;
};

// Registry x {constant, power(0.5), mt} x {T1, T2} over
// x in {0, 1/4, 1/2, 3/4, 1}, lambda in {0, 1/3, 1}, alpha in {1/2, 1, 2}, q in {1, 2}.
SweepPlan default_sweep_plan();

// Cartesian product of the plan; T2 only where q > 1. Points that throw become
// ERROR reports. Sorted by function, kernel, theorem, x, lambda, alpha, q.
// threads == 0 picks the hardware concurrency; the output does not depend on it.
std::vector<BoundReport> sweep(const SweepPlan& plan, const VerifyOptions& options = {}, unsigned threads = 0);

struct SweepSummary {
    int pass = 0;
    int fail = 0;
    int hypothesis_unmet = 0;
    int error = 0;
    int total() const { return pass + fail + hypothesis_unmet + error; }
};

SweepSummary summarize(const std::vector<BoundReport>& reports);

} // namespace phi_ineq
