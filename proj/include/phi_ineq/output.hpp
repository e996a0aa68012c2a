#pragma once

#include "phi_ineq/report.hpp"
#include "phi_ineq/verify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace phi_ineq {

// Shortest text that parses back to the same double; nan/inf spelled out.
std::string format_double(double value);

inline constexpr const char* kReportCsvHeader =
    "function,kernel,theorem,a,b,x,lambda,alpha,q,p,s,lhs,rhs,margin,hypothesis_ok,status";

inline constexpr const char* kLedgerCsvHeader =
    "coefficient,alpha,lambda,s,p,printed,oracle,abs_diff,verdict,method,note";

void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports);
// {"reports": [...], "summary": {...}} with sorted keys.
void write_reports_json(std::ostream& os, const std::vector<BoundReport>& reports);

void write_ledger_csv(std::ostream& os, const std::vector<DiscrepancyEntry>& ledger);
// {"entries": [...], "summary": {...}} with sorted keys.
void write_ledger_json(std::ostream& os, const std::vector<DiscrepancyEntry>& ledger);

} // namespace phi_ineq
