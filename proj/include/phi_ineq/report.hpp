#pragma once

#include "phi_ineq/bounds.hpp"
#include "phi_ineq/specfun.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phi_ineq {

enum class Verdict { AGREES, DISAGREES, PRINTED_UNDEFINED };

std::string_view to_string(Verdict verdict);

// Printed closed form against its quadrature value at one parameter point.
struct DiscrepancyEntry {
    PrintedCoef name = PrintedCoef::A2C;
    double alpha = 0.0;
    double lambda = 0.0;
    // set for A4 / A5
    std::optional<double> s;
    // set for B_closed / C1 / C2
    std::optional<double> p;
    // empty when the printed formula is undefined at this point
    std::optional<double> printed;
    std::optional<SpecFunMethod> method;
    double oracle = 0.0;
    // |printed - oracle|, empty when printed is
    std::optional<double> abs_diff;
    Verdict verdict = Verdict::PRINTED_UNDEFINED;
    // reason when undefined
    std::string note;
};

inline constexpr double kAgreementTol = 1e-8;

struct LedgerGrid {
    std::vector<double> alphas = {0.5, 1.0, 2.0, 3.5};
    std::vector<double> lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};
    // power-kernel exponents for A4 / A5
    std::vector<double> s_values = {0.5, 1.0};
    // Hoelder exponents q; the ledger uses p = q / (q - 1)
    std::vector<double> qs = {2.0, 3.0};
};

DiscrepancyEntry compare_printed(PrintedCoef name, const EvalParams& params,
                                 const QuadratureSpec& quad = default_coefficient_quadrature());

// One entry per (coefficient, grid point), ordered by coefficient, alpha,
// lambda, s, p.
std::vector<DiscrepancyEntry> build_ledger(const LedgerGrid& grid = {},
                                           const QuadratureSpec& quad = default_coefficient_quadrature());

struct LedgerCounts {
    int agrees = 0;
    int disagrees = 0;
    int undefined = 0;
};

LedgerCounts count_verdicts(const std::vector<DiscrepancyEntry>& ledger, PrintedCoef name);

} // namespace phi_ineq
