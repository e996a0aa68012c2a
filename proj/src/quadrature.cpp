#include "phi_ineq/quadrature.hpp"

#include "phi_ineq/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace phi_ineq {

namespace {

// QUADPACK qk15 abscissae and weights. Odd indices of kXgk are the Gauss
// nodes; kXgk[7] is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double lo;
    double hi;
    double value;
    double err;
    int segment;
};

struct PanelOrder {
    bool operator()(const Panel& l, const Panel& r) const
    {
        if (l.err != r.err) return l.err < r.err;
        // deterministic tie-break: leftmost panel first
        if (l.segment != r.segment) return l.segment > r.segment;
        return l.lo > r.lo;
    }
};

// One integration segment expressed in its own variable u on [u_lo, u_hi].
struct Segment {
    enum class Map { Identity, LeftPower, RightPower };
    Map map = Map::Identity;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double exponent = 0.0;
    double u_lo = 0.0;
    double u_hi = 0.0;

    double t_of(double u) const
    {
        switch (map) {
        case Map::Identity:
            return u;
        case Map::LeftPower:
            return t_lo + std::pow(u, 1.0 / (1.0 + exponent));
        case Map::RightPower:
            return t_hi - std::pow(u, 1.0 / (1.0 + exponent));
        }
        return u;
    }

    double jacobian(double u) const
    {
        if (map == Map::Identity) return 1.0;
        const double m = 1.0 / (1.0 + exponent);
        return m * std::pow(u, m - 1.0);
    }
};

Segment make_segment(double lo, double hi, Segment::Map map, double exponent)
{
    Segment s;
    s.map = map;
    s.t_lo = lo;
    s.t_hi = hi;
    s.exponent = exponent;
    if (map == Segment::Map::Identity) {
        s.u_lo = lo;
        s.u_hi = hi;
    } else {
        s.u_lo = 0.0;
        s.u_hi = std::pow(hi - lo, 1.0 + exponent);
    }
    return s;
}

class Evaluator {
public:
    Evaluator(const Integrand& f, const std::vector<Segment>& segments) : f_(f), segments_(segments) {}

    double operator()(int segment, double u) const
    {
        const Segment& s = segments_[static_cast<std::size_t>(segment)];
        const double t = s.t_of(u);
        const double y = f_(t);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os << "integrand returned " << y << " at t = " << t;
            throw NonFiniteSample(os.str());
        }
        return y * s.jacobian(u);
    }

private:
    const Integrand& f_;
    const std::vector<Segment>& segments_;
};

Panel gauss_kronrod(const Evaluator& eval, int segment, double lo, double hi)
{
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    const double fc = eval(segment, centre);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    double resabs = std::abs(kronrod);

    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = eval(segment, centre - dx);
        f2[j] = eval(segment, centre + dx);
        const double sum = f1[j] + f2[j];
        kronrod += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }

    const double mean = 0.5 * kronrod;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double scale = std::abs(half);
    kronrod *= half;
    gauss *= half;
    resabs *= scale;
    resasc *= scale;

    double err = std::abs(kronrod - gauss);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);

    return Panel{lo, hi, kronrod, err, segment};
}

} // namespace

void QuadratureSpec::validate(double lo, double hi) const
{
    std::ostringstream problems;
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) problems << " lo < hi (both finite) required;";
    if (!(abs_tol > 0.0)) problems << " abs_tol must be > 0;";
    if (!(rel_tol > 0.0)) problems << " rel_tol must be > 0;";
    if (max_subdivisions < 1) problems << " max_subdivisions must be positive;";
    if (!(left_exponent > -1.0)) problems << " left_exponent must be > -1;";
    if (!(right_exponent > -1.0)) problems << " right_exponent must be > -1;";
    for (std::size_t i = 0; i < split_points.size(); ++i) {
        const double p = split_points[i];
        if (!(p > lo && p < hi)) {
            problems << " split point " << p << " not strictly inside the interval;";
            break;
        }
        if (i > 0 && !(p > split_points[i - 1])) {
            problems << " split points must be strictly increasing;";
            break;
        }
    }
    const std::string text = problems.str();
    if (!text.empty()) throw DomainError("invalid quadrature request:" + text);
}

QuadratureSpec QuadratureSpec::scaled_tolerance(double factor) const
{
    QuadratureSpec out = *this;
    out.abs_tol *= factor;
    out.rel_tol *= factor;
    return out;
}

QuadResult integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec)
{
    spec.validate(lo, hi);

    std::vector<double> cuts;
    cuts.reserve(spec.split_points.size() + 3);
    cuts.push_back(lo);
    cuts.insert(cuts.end(), spec.split_points.begin(), spec.split_points.end());
    cuts.push_back(hi);

    const bool left_singular = spec.left_exponent != 0.0;
    const bool right_singular = spec.right_exponent != 0.0;
    if (cuts.size() == 2 && left_singular && right_singular) cuts.insert(cuts.begin() + 1, 0.5 * (lo + hi));

    std::vector<Segment> segments;
    const std::size_t n_seg = cuts.size() - 1;
    for (std::size_t i = 0; i < n_seg; ++i) {
        auto map = Segment::Map::Identity;
        double exponent = 0.0;
        if (i == 0 && left_singular) {
            map = Segment::Map::LeftPower;
            exponent = spec.left_exponent;
        } else if (i + 1 == n_seg && right_singular) {
            map = Segment::Map::RightPower;
            exponent = spec.right_exponent;
        }
        segments.push_back(make_segment(cuts[i], cuts[i + 1], map, exponent));
    }

    const Evaluator eval(f, segments);
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        Panel p = gauss_kronrod(eval, static_cast<int>(i), segments[i].u_lo, segments[i].u_hi);
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }

    auto tolerance = [&](double value) { return std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };

    int bisections = 0;
    while (total_err > tolerance(total)) {
        if (bisections >= spec.max_subdivisions) {
            std::ostringstream os;
            os << "error estimate " << total_err << " above tolerance " << tolerance(total) << " after "
               << bisections << " subdivisions";
            throw ToleranceNotMet(os.str());
        }
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi) ||
            (worst.hi - worst.lo) <= 100.0 * kEps * std::max(std::abs(worst.lo), std::abs(worst.hi))) {
            std::ostringstream os;
            os << "roundoff limit reached near [" << worst.lo << ", " << worst.hi << "] with error estimate "
               << total_err;
            throw ToleranceNotMet(os.str());
        }
        heap.pop();
        const Panel left = gauss_kronrod(eval, worst.segment, worst.lo, mid);
        const Panel right = gauss_kronrod(eval, worst.segment, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++bisections;
    }

    // resum to shed drift from the incremental updates
    double value = 0.0;
    double err = 0.0;
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) {
        return l.segment != r.segment ? l.segment < r.segment : l.lo < r.lo;
    });
    for (const Panel& p : panels) {
        value += p.value;
        err += p.err;
    }
    return QuadResult{value, err, bisections};
}

QuadResult integrate_kinked_abs(const Integrand& base, double kink, const QuadratureSpec& spec)
{
    QuadratureSpec local = spec;
    local.split_points.clear();
    for (double p : spec.split_points)
        if (p > 0.0 && p < 1.0) local.split_points.push_back(p);
    if (kink > 0.0 && kink < 1.0) local.split_points.push_back(kink);
    std::sort(local.split_points.begin(), local.split_points.end());
    local.split_points.erase(std::unique(local.split_points.begin(), local.split_points.end()),
                             local.split_points.end());
    return integrate([&base](double t) { return std::abs(base(t)); }, 0.0, 1.0, local);
}

} // namespace phi_ineq
