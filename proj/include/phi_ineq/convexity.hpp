#pragma once

#include "phi_ineq/fracint.hpp"

#include <string>
#include <utility>
#include <vector>

namespace phi_ineq {

// Weight phi : (0,1) -> (0, inf) selecting a convexity class.
//   Constant     phi = 1                      (classical convexity)
//   PowerS       phi = t^(s-1), s in (0,1]    (s-convexity, second sense)
//   MT           phi = 1 / (2 sqrt(t) sqrt(1-t))
//   CustomTable  monotone cubic through user samples (t_i, phi_i)
class PhiKernel {
public:
    enum class Kind { Constant, PowerS, MT, CustomTable };

    static PhiKernel constant();
    static PhiKernel power(double s);
    static PhiKernel mt();
    static PhiKernel table(std::vector<std::pair<double, double>> samples);

    Kind kind() const { return kind_; }
    double s() const { return s_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    // Stable text form used in reports: constant, power(0.5), mt, table(n).
    std::string label() const;

    // Leading exponent e of phi(t) ~ t^e as t -> 0+ (left) and
    // phi(t) ~ (1-t)^e as t -> 1- (right).
    double left_exponent() const;
    double right_exponent() const;

    friend bool operator==(const PhiKernel&, const PhiKernel&) = default;

private:
    Kind kind_ = Kind::Constant;
    double s_ = 1.0;
    std::vector<std::pair<double, double>> samples_;
    std::vector<double> slopes_;

    friend double phi_eval(const PhiKernel& kernel, double t);
};

// phi(t) for t strictly inside (0,1); DomainError otherwise.
double phi_eval(const PhiKernel& kernel, double t);

struct WitnessPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

struct ConvexityWitness {
    bool holds = true;
    // max over sampled (x, y, t) of lhs - rhs - tol * max(1, |rhs|);
    // holds == (worst_violation <= 0).
    double worst_violation = 0.0;
    WitnessPoint witness_point;
    // false when some sampled g value was negative (tolerated except for MT)
    bool nonnegative = true;
};

struct ConvexityCheckOptions {
    int grid_n = 33;
    double tol = 1e-9;
};

// Samples g(t x + (1-t) y) <= t phi(t) g(x) + (1-t) phi(1-t) g(y) for x, y on a
// uniform grid_n-point grid over the interval and t = (j + 1/2) / (grid_n - 1).
ConvexityWitness check_phi_convex(const RealFn& g, const PhiKernel& kernel, const Interval& interval,
                                  const ConvexityCheckOptions& options = {});

} // namespace phi_ineq
