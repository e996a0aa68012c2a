#include "phi_ineq/functions.hpp"

#include "phi_ineq/errors.hpp"
#include "phi_ineq/expr.hpp"

#include <algorithm>
#include <cmath>

namespace phi_ineq {

namespace {

std::vector<TestFunction> build_registry()
{
    const Interval unit{0.0, 1.0};
    std::vector<TestFunction> r;
    r.push_back({"t", [](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; }, unit});
    r.push_back({"t^2", [](double t) { return t * t; }, [](double t) { return 2.0 * t; },
                 [](double) { return 2.0; }, unit});
    r.push_back({"t^3", [](double t) { return t * t * t; }, [](double t) { return 3.0 * t * t; },
                 [](double t) { return 6.0 * t; }, unit});
    r.push_back({"t^4", [](double t) { return t * t * t * t; }, [](double t) { return 4.0 * t * t * t; },
                 [](double t) { return 12.0 * t * t; }, unit});
    r.push_back({"exp(t)", [](double t) { return std::exp(t); }, [](double t) { return std::exp(t); },
                 [](double t) { return std::exp(t); }, unit});
    r.push_back({"-ln(t)", [](double t) { return -std::log(t); }, [](double t) { return -1.0 / t; },
                 [](double t) { return 1.0 / (t * t); }, Interval{0.5, 2.0}});
    r.push_back({"sqrt_control", [](double t) { return 4.0 / 15.0 * t * t * std::sqrt(t); },
                 [](double t) { return 2.0 / 3.0 * t * std::sqrt(t); }, [](double t) { return std::sqrt(t); },
                 unit});
    return r;
}

} // namespace

TestFunction function_from_expression(const std::string& text, const Interval& domain)
{
    domain.validate();
    const Expr f = Expr::parse(text);
    const Expr f1 = f.derivative();
    const Expr f2 = f1.derivative();
    return TestFunction{text, f, f1, f2, domain};
}

const std::vector<TestFunction>& function_registry()
{
    static const std::vector<TestFunction> registry = build_registry();
    return registry;
}

std::optional<TestFunction> find_registered(const std::string& name)
{
    const auto& reg = function_registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const TestFunction& fn) { return fn.name == name; });
    if (it == reg.end()) return std::nullopt;
    return *it;
}

TestFunction lookup_function(const std::string& name_or_expression, std::optional<Interval> domain)
{
    if (auto fn = find_registered(name_or_expression)) {
        if (domain) {
            domain->validate();
            fn->domain = *domain;
        }
        return *fn;
    }
    return function_from_expression(name_or_expression, domain.value_or(Interval{0.0, 1.0}));
}

DerivativeCheck check_derivatives(const TestFunction& fn, int samples, double rel_tol)
{
    DerivativeCheck out;
    const Interval& d = fn.domain;
    auto central = [](const RealFn& g, double t, double h) { return (g(t + h) - g(t - h)) / (2.0 * h); };
    for (int i = 1; i <= samples; ++i) {
        const double t = d.a + d.length() * i / (samples + 1.0);
        const double h = 1e-5 * std::max(1.0, std::abs(t));
        const double fd1 = central(fn.f, t, h);
        const double fd2 = central(fn.f1, t, h);
        const double r1 = std::abs(fd1 - fn.f1(t)) / std::max(1.0, std::abs(fn.f1(t)));
        const double r2 = std::abs(fd2 - fn.f2(t)) / std::max(1.0, std::abs(fn.f2(t)));
        out.worst_f1_rel = std::max(out.worst_f1_rel, r1);
        out.worst_f2_rel = std::max(out.worst_f2_rel, r2);
    }
    out.ok = out.worst_f1_rel <= rel_tol && out.worst_f2_rel <= rel_tol;
    return out;
}

} // namespace phi_ineq
