#pragma once

#include "phi_ineq/convexity.hpp"
#include "phi_ineq/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace phi_ineq {

enum class Command { Selftest, Verify, Sweep, Coeffs };
enum class OutputFormat { Csv, Json };

struct RunConfig {
    Command command = Command::Selftest;
    std::vector<std::string> functions;
    std::vector<PhiKernel> kernels;
    std::vector<Theorem> theorems;
    std::optional<double> a;
    std::optional<double> b;
    // verify: one absolute x; sweep: positions in [0, 1] relative to the domain
    std::vector<double> xs;
    std::vector<double> lambdas;
    std::vector<double> alphas;
    std::vector<double> qs;
    std::vector<double> s_values;
    std::optional<std::string> output_path;
    OutputFormat format = OutputFormat::Csv;
    std::optional<double> quad_tol;
    // Scales every theorem bound; anything but 1 corrupts the bound on purpose.
    double rhs_scale = 1.0;
    // 0 picks the hardware concurrency
    unsigned threads = 0;
};

// Exit statuses of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// args excludes the program name. Values from the JSON config (its text, or
// the file named by --config when config_content is empty) are overridden by
// flags. Throws UsageError listing every violation.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_content = std::nullopt);

// Runs the command, writing the main artifact to out (or the configured file)
// and diagnostics to err. Returns an exit status.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_config + execute with usage errors mapped to kExitUsage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace phi_ineq
