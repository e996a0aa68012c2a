#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phi_ineq {

struct SelftestCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestResult {
    std::vector<SelftestCheck> checks;
    // Printed-vs-quadrature discrepancies the ledger is expected to find.
    std::vector<std::string> findings;
    bool all_passed() const;
};

// Identity battery, equality cases, coefficient cross-checks, ledger findings,
// default sweep, special-function and fractional-integral goldens,
// Hermite-Hadamard. Checks that throw are recorded as failed with the message.
SelftestResult run_selftest();

// One line per check, the findings, then a summary line.
void print_selftest(std::ostream& os, const SelftestResult& result);

} // namespace phi_ineq
