#include "phi_ineq/report.hpp"

#include "phi_ineq/errors.hpp"

#include <cmath>

namespace phi_ineq {

std::string_view to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::AGREES:
        return "AGREES";
    case Verdict::DISAGREES:
        return "DISAGREES";
    case Verdict::PRINTED_UNDEFINED:
        return "PRINTED_UNDEFINED";
    }
    return "?";
}

DiscrepancyEntry compare_printed(PrintedCoef name, const EvalParams& params, const QuadratureSpec& quad)
{
    DiscrepancyEntry e;
    e.name = name;
    e.alpha = params.alpha;
    e.lambda = params.lambda;
    if (name == PrintedCoef::A4 || name == PrintedCoef::A5) e.s = params.s;
    if (name == PrintedCoef::B_closed || name == PrintedCoef::C1 || name == PrintedCoef::C2)
        e.p = params.conjugate_p();

    e.oracle = oracle_coefficient(name, params, quad);
    try {
        const SpecFunResult printed = printed_coefficient(name, params);
        if (!std::isfinite(printed.value)) throw DomainError("printed value is not finite");
        e.printed = printed.value;
        e.method = printed.method;
        e.abs_diff = std::abs(printed.value - e.oracle);
        e.verdict = *e.abs_diff <= kAgreementTol ? Verdict::AGREES : Verdict::DISAGREES;
    } catch (const Error& err) {
        e.verdict = Verdict::PRINTED_UNDEFINED;
        e.note = err.what();
    }
    return e;
}

std::vector<DiscrepancyEntry> build_ledger(const LedgerGrid& grid, const QuadratureSpec& quad)
{
    std::vector<DiscrepancyEntry> out;
    auto base = [](double alpha, double lambda) {
        EvalParams p;
        p.alpha = alpha;
        p.lambda = lambda;
        return p;
    };
    for (PrintedCoef name : {PrintedCoef::A2C, PrintedCoef::A3C, PrintedCoef::A4, PrintedCoef::A5,
                             PrintedCoef::B_closed, PrintedCoef::C1, PrintedCoef::C2})
        for (double alpha : grid.alphas)
            for (double lambda : grid.lambdas) {
                EvalParams p = base(alpha, lambda);
                switch (name) {
                case PrintedCoef::A2C:
                case PrintedCoef::A3C:
                    out.push_back(compare_printed(name, p, quad));
                    break;
                case PrintedCoef::A4:
                case PrintedCoef::A5:
                    for (double s : grid.s_values) {
                        p.s = s;
                        out.push_back(compare_printed(name, p, quad));
                    }
                    break;
                case PrintedCoef::B_closed:
                case PrintedCoef::C1:
                case PrintedCoef::C2:
                    for (double q : grid.qs) {
                        p.q = q;
                        out.push_back(compare_printed(name, p, quad));
                    }
                    break;
                }
            }
    return out;
}

LedgerCounts count_verdicts(const std::vector<DiscrepancyEntry>& ledger, PrintedCoef name)
{
    LedgerCounts c;
    for (const auto& e : ledger) {
        if (e.name != name) continue;
        switch (e.verdict) {
        case Verdict::AGREES:
            ++c.agrees;
            break;
        case Verdict::DISAGREES:
            ++c.disagrees;
            break;
        case Verdict::PRINTED_UNDEFINED:
            ++c.undefined;
            break;
        }
    }
    return c;
}

} // namespace phi_ineq
