#include "phi_ineq/convexity.hpp"

#include "phi_ineq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace phi_ineq {

namespace {

std::string format_number(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

// Fritsch-Carlson slopes for a monotone piecewise-cubic Hermite interpolant.
std::vector<double> pchip_slopes(const std::vector<std::pair<double, double>>& pts)
{
    const std::size_t n = pts.size();
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = pts[k + 1].first - pts[k].first;
        delta[k] = (pts[k + 1].second - pts[k].second) / h[k];
    }
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0) continue;
        const double w1 = 2.0 * h[k] + h[k - 1];
        const double w2 = h[k] + 2.0 * h[k - 1];
        d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    return d;
}

} // namespace

PhiKernel PhiKernel::constant() { return PhiKernel{}; }

PhiKernel PhiKernel::power(double s)
{
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("power kernel requires s in (0,1], got " + format_number(s));
    PhiKernel k;
    k.kind_ = Kind::PowerS;
    k.s_ = s;
    return k;
}

PhiKernel PhiKernel::mt()
{
    PhiKernel k;
    k.kind_ = Kind::MT;
    return k;
}

PhiKernel PhiKernel::table(std::vector<std::pair<double, double>> samples)
{
    if (samples.size() < 2) throw DomainError("custom phi table needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [t, v] = samples[i];
        if (!(t > 0.0 && t < 1.0)) throw DomainError("custom phi table: t = " + format_number(t) + " not in (0,1)");
        if (!(v > 0.0) || !std::isfinite(v))
            throw DomainError("custom phi table: value at t = " + format_number(t) + " must be positive");
        if (i > 0 && !(t > samples[i - 1].first)) throw DomainError("custom phi table: t values must be increasing");
    }
    PhiKernel k;
    k.kind_ = Kind::CustomTable;
    k.slopes_ = pchip_slopes(samples);
    k.samples_ = std::move(samples);
    return k;
}

std::string PhiKernel::label() const
{
    switch (kind_) {
    case Kind::Constant:
        return "constant";
    case Kind::PowerS:
        return "power(" + format_number(s_) + ")";
    case Kind::MT:
        return "mt";
    case Kind::CustomTable:
        return "table(" + std::to_string(samples_.size()) + ")";
    }
    return "unknown";
}

double PhiKernel::left_exponent() const
{
    switch (kind_) {
    case Kind::PowerS:
        return s_ - 1.0;
    case Kind::MT:
        return -0.5;
    default:
        return 0.0;
    }
}

double PhiKernel::right_exponent() const { return kind_ == Kind::MT ? -0.5 : 0.0; }

double phi_eval(const PhiKernel& kernel, double t)
{
    if (!(t > 0.0 && t < 1.0)) throw DomainError("phi is defined on (0,1) only, got t = " + format_number(t));
    switch (kernel.kind_) {
    case PhiKernel::Kind::Constant:
        return 1.0;
    case PhiKernel::Kind::PowerS:
        return kernel.s_ == 1.0 ? 1.0 : std::pow(t, kernel.s_ - 1.0);
    case PhiKernel::Kind::MT:
        return 0.5 / (std::sqrt(t) * std::sqrt(1.0 - t));
    case PhiKernel::Kind::CustomTable: {
        const auto& pts = kernel.samples_;
        // constant extrapolation outside the sampled range
        if (t <= pts.front().first) return pts.front().second;
        if (t >= pts.back().first) return pts.back().second;
        const auto it = std::upper_bound(pts.begin(), pts.end(), t,
                                         [](double v, const std::pair<double, double>& p) { return v < p.first; });
        const std::size_t k = static_cast<std::size_t>(it - pts.begin()) - 1;
        const double h = pts[k + 1].first - pts[k].first;
        const double u = (t - pts[k].first) / h;
        const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        const double h10 = u * (1.0 - u) * (1.0 - u);
        const double h01 = u * u * (3.0 - 2.0 * u);
        const double h11 = u * u * (u - 1.0);
        return h00 * pts[k].second + h10 * h * kernel.slopes_[k] + h01 * pts[k + 1].second +
               h11 * h * kernel.slopes_[k + 1];
    }
    }
    return 1.0;
}

ConvexityWitness check_phi_convex(const RealFn& g, const PhiKernel& kernel, const Interval& interval,
                                  const ConvexityCheckOptions& options)
{
    interval.validate();
    if (options.grid_n < 3) throw DomainError("convexity check needs grid_n >= 3");
    if (!(options.tol >= 0.0)) throw DomainError("convexity check needs tol >= 0");

    const int n = options.grid_n;
    const double step = interval.length() / (n - 1);
    std::vector<double> xs(static_cast<std::size_t>(n));
    std::vector<double> gx(static_cast<std::size_t>(n));
    ConvexityWitness result;
    for (int i = 0; i < n; ++i) {
        const double x = i == n - 1 ? interval.b : interval.a + i * step;
        xs[static_cast<std::size_t>(i)] = x;
        gx[static_cast<std::size_t>(i)] = g(x);
    }

    const int m = n - 1;
    std::vector<double> ts(static_cast<std::size_t>(m));
    std::vector<double> wl(static_cast<std::size_t>(m));
    std::vector<double> wr(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double t = (j + 0.5) / m;
        ts[static_cast<std::size_t>(j)] = t;
        wl[static_cast<std::size_t>(j)] = t * phi_eval(kernel, t);
        wr[static_cast<std::size_t>(j)] = (1.0 - t) * phi_eval(kernel, 1.0 - t);
    }

    auto note_value = [&](double v, double at) {
        if (!std::isfinite(v)) throw DomainError("convexity check: g is not finite at " + format_number(at));
        if (v < 0.0) {
            result.nonnegative = false;
            if (kernel.kind() == PhiKernel::Kind::MT)
                throw DomainError("MT-convexity requires g >= 0; g(" + format_number(at) +
                                  ") = " + format_number(v));
        }
    };
    for (int i = 0; i < n; ++i) note_value(gx[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(i)]);

    bool first = true;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < m; ++j) {
                const double t = ts[static_cast<std::size_t>(j)];
                const double x = xs[static_cast<std::size_t>(i)];
                const double y = xs[static_cast<std::size_t>(k)];
                const double p = t * x + (1.0 - t) * y;
                const double lhs = g(p);
                note_value(lhs, p);
                const double rhs =
                    wl[static_cast<std::size_t>(j)] * gx[static_cast<std::size_t>(i)] +
                    wr[static_cast<std::size_t>(j)] * gx[static_cast<std::size_t>(k)];
                const double violation = lhs - rhs - options.tol * std::max(1.0, std::abs(rhs));
                // strict comparison keeps the lexicographically smallest (x, y, t) on ties
                if (first || violation > result.worst_violation) {
                    result.worst_violation = violation;
                    result.witness_point = {x, y, t};
                    first = false;
                }
            }
        }
    }
    result.holds = result.worst_violation <= 0.0;
    return result;
}

} // namespace phi_ineq
