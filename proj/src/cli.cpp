#include "phi_ineq/cli.hpp"

#include "phi_ineq/errors.hpp"
#include "phi_ineq/functions.hpp"
#include "phi_ineq/output.hpp"
#include "phi_ineq/report.hpp"
#include "phi_ineq/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace phi_ineq {

namespace {

using nlohmann::json;

// Keys accepted both as flags (--key, with '_' spelled '-') and in the JSON config.
const std::vector<std::string> kKeys = {"fn",    "kernel", "a",      "b",      "x",        "lambda", "alpha",
                                        "q",     "s",      "theorem", "out",   "format",   "quad_tol"};

using RawValues = std::map<std::string, std::vector<std::string>>;

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::string current;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            items.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    items.push_back(current);
    for (auto& item : items) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        item = first == std::string::npos ? std::string() : item.substr(first, last - first + 1);
    }
    return items;
}

void read_config(const std::string& content, RawValues& raw, std::vector<std::string>& problems)
{
    json doc;
    try {
        doc = json::parse(content);
    } catch (const json::parse_error& e) {
        problems.push_back(std::string("config is not valid JSON: ") + e.what());
        return;
    }
    if (!doc.is_object()) {
        problems.push_back("config must be a JSON object");
        return;
    }
    for (const auto& [key, value] : doc.items()) {
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            problems.push_back("unknown config key '" + key + "'");
            continue;
        }
        std::vector<std::string> items;
        auto add = [&](const json& v) {
            if (v.is_string())
                items.push_back(v.get<std::string>());
            else if (v.is_number())
                items.push_back(format_double(v.get<double>()));
            else
                problems.push_back("config key '" + key + "' holds a value that is neither a string nor a number");
        };
        if (value.is_array()) {
            if (value.empty()) problems.push_back("config key '" + key + "' is an empty list");
            for (const auto& v : value) add(v);
        } else {
            add(value);
        }
        raw[key] = items;
    }
}

std::optional<double> parse_number(const std::string& text)
{
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

class Validator {
public:
    Validator(const RawValues& raw, std::vector<std::string>& problems) : raw_(raw), problems_(problems) {}

    bool has(const std::string& key) const { return raw_.count(key) != 0; }

    std::vector<std::string> strings(const std::string& key) const
    {
        const auto it = raw_.find(key);
        return it == raw_.end() ? std::vector<std::string>{} : it->second;
    }

    std::vector<double> numbers(const std::string& key)
    {
        std::vector<double> out;
        for (const auto& item : strings(key)) {
            if (auto v = parse_number(item))
                out.push_back(*v);
            else
                problems_.push_back(key + ": '" + item + "' is not a finite number");
        }
        return out;
    }

    std::optional<double> single_number(const std::string& key)
    {
        const auto values = numbers(key);
        if (values.size() > 1) problems_.push_back(key + " takes a single value");
        if (values.empty()) return std::nullopt;
        return values.front();
    }

    std::optional<std::string> single_string(const std::string& key)
    {
        const auto values = strings(key);
        if (values.size() > 1) problems_.push_back(key + " takes a single value");
        if (values.empty()) return std::nullopt;
        return values.front();
    }

    void require(bool ok, const std::string& message)
    {
        if (!ok) problems_.push_back(message);
    }

private:
    const RawValues& raw_;
    std::vector<std::string>& problems_;
};

std::optional<PhiKernel> parse_kernel(const std::string& text, double default_s, std::vector<std::string>& problems)
{
    try {
        if (text == "constant") return PhiKernel::constant();
        if (text == "mt") return PhiKernel::mt();
        if (text == "power") return PhiKernel::power(default_s);
        if (text.rfind("power(", 0) == 0 && text.back() == ')') {
            if (auto s = parse_number(text.substr(6, text.size() - 7))) return PhiKernel::power(*s);
        }
    } catch (const DomainError& e) {
        problems.push_back(std::string("kernel ") + text + ": " + e.what());
        return std::nullopt;
    }
    problems.push_back("kernel must be constant, power, power(S) or mt (got '" + text + "')");
    return std::nullopt;
}

std::string join_problems(const std::vector<std::string>& problems)
{
    std::string text = "invalid arguments:";
    for (const auto& p : problems) text += "\n  - " + p;
    return text;
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args, const std::optional<std::string>& config_content)
{
    CLI::App app{"Numerical verification of fractional Ostrowski/Simpson-type bounds", "phi-ineq"};
    std::string command;
    app.add_option("command", command, "selftest | verify | sweep | coeffs")->required();

    std::map<std::string, std::string> flag_values;
    for (const auto& key : kKeys) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        app.add_option(flag, flag_values[key]);
    }
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with the same keys as the flags");
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads for sweeps (0 = all cores)");
    double inject_fault = 1.0;
    app.add_option("--inject-fault", inject_fault)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string("invalid arguments: ") + e.what());
    }

    std::vector<std::string> problems;
    RawValues raw;
    if (config_content) {
        read_config(*config_content, raw, problems);
    } else if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            problems.push_back("cannot read config file '" + config_path + "'");
        } else {
            std::ostringstream text;
            text << in.rdbuf();
            read_config(text.str(), raw, problems);
        }
    }
    for (const auto& key : kKeys) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (app.count(flag) > 0) raw[key] = split_list(flag_values[key]);
    }

    RunConfig cfg;
    cfg.threads = threads;
    cfg.rhs_scale = inject_fault;
    if (!(inject_fault > 0.0 && std::isfinite(inject_fault))) problems.push_back("--inject-fault must be > 0");

    if (command == "selftest")
        cfg.command = Command::Selftest;
    else if (command == "verify")
        cfg.command = Command::Verify;
    else if (command == "sweep")
        cfg.command = Command::Sweep;
    else if (command == "coeffs")
        cfg.command = Command::Coeffs;
    else
        problems.push_back("command must be selftest, verify, sweep or coeffs (got '" + command + "')");

    Validator v(raw, problems);

    if (auto fmt = v.single_string("format")) {
        if (*fmt == "csv")
            cfg.format = OutputFormat::Csv;
        else if (*fmt == "json")
            cfg.format = OutputFormat::Json;
        else
            problems.push_back("format must be csv or json (got '" + *fmt + "')");
    }
    cfg.output_path = v.single_string("out");
    if (cfg.output_path && cfg.output_path->empty()) problems.push_back("out must not be empty");
    cfg.quad_tol = v.single_number("quad_tol");
    if (cfg.quad_tol && !(*cfg.quad_tol > 0.0 && *cfg.quad_tol < 1.0)) problems.push_back("quad_tol must lie in (0, 1)");

    cfg.a = v.single_number("a");
    cfg.b = v.single_number("b");
    if (cfg.a.has_value() != cfg.b.has_value()) problems.push_back("a and b must be given together");
    if (cfg.a && cfg.b && !(*cfg.a < *cfg.b)) problems.push_back("a must be < b");

    cfg.xs = v.numbers("x");
    cfg.lambdas = v.numbers("lambda");
    cfg.alphas = v.numbers("alpha");
    cfg.qs = v.numbers("q");
    cfg.s_values = v.numbers("s");
    for (double l : cfg.lambdas)
        v.require(l >= 0.0 && l <= 1.0, "lambda must lie in [0, 1] (got " + format_double(l) + ")");
    for (double a : cfg.alphas) v.require(a > 0.0, "alpha must be > 0 (got " + format_double(a) + ")");
    for (double q : cfg.qs) v.require(q >= 1.0, "q must be >= 1 (got " + format_double(q) + ")");
    for (double s : cfg.s_values) v.require(s > 0.0 && s <= 1.0, "s must lie in (0, 1] (got " + format_double(s) + ")");

    const double kernel_s = cfg.s_values.empty() ? 0.5 : cfg.s_values.front();
    for (const auto& text : v.strings("kernel"))
        if (auto k = parse_kernel(text, kernel_s, problems)) cfg.kernels.push_back(*k);

    for (const auto& text : v.strings("theorem")) {
        if (auto t = theorem_from_string(text))
            cfg.theorems.push_back(*t);
        else
            problems.push_back("theorem must be t1, t2, hh or lemma1 (got '" + text + "')");
    }

    cfg.functions = v.strings("fn");
    for (const auto& name : cfg.functions) {
        try {
            lookup_function(name);
        } catch (const Error& e) {
            problems.push_back("fn '" + name + "': " + e.what());
        }
    }

    if (cfg.command == Command::Verify) {
        v.require(cfg.functions.size() == 1, "verify needs exactly one --fn");
        v.require(cfg.kernels.size() <= 1, "verify takes a single kernel");
        v.require(cfg.theorems.size() <= 1, "verify takes a single theorem");
        for (const char* key : {"x", "lambda", "alpha", "q", "s"}) v.require(v.strings(key).size() <= 1, std::string(key) + " takes a single value in verify");
        if (cfg.kernels.empty()) cfg.kernels.push_back(PhiKernel::constant());
        if (cfg.theorems.empty()) cfg.theorems.push_back(Theorem::T1);
        if (cfg.lambdas.empty()) cfg.lambdas.push_back(0.0);
        if (cfg.alphas.empty()) cfg.alphas.push_back(1.0);
        if (cfg.qs.empty()) cfg.qs.push_back(cfg.theorems.front() == Theorem::T2 ? 2.0 : 1.0);
        if (cfg.theorems.front() == Theorem::T2)
            v.require(cfg.qs.front() > 1.0, "theorem t2 needs q > 1 (p = q/(q-1))");
        if (cfg.functions.size() == 1 && problems.empty()) {
            Interval d = lookup_function(cfg.functions.front()).domain;
            if (cfg.a) d = Interval{*cfg.a, *cfg.b};
            if (cfg.xs.empty()) cfg.xs.push_back(0.5 * (d.a + d.b));
            v.require(cfg.xs.front() >= d.a && cfg.xs.front() <= d.b,
                      "x must lie in [a, b] = [" + format_double(d.a) + ", " + format_double(d.b) + "] (got " +
                          format_double(cfg.xs.front()) + ")");
        }
    } else if (cfg.command == Command::Sweep) {
        const SweepPlan def = default_sweep_plan();
        if (!v.has("fn")) cfg.functions = def.function_names;
        if (cfg.kernels.empty()) cfg.kernels = def.kernels;
        if (cfg.theorems.empty()) cfg.theorems = def.theorems;
        if (cfg.xs.empty()) cfg.xs = def.x_positions;
        if (cfg.lambdas.empty()) cfg.lambdas = def.lambdas;
        if (cfg.alphas.empty()) cfg.alphas = def.alphas;
        if (cfg.qs.empty()) cfg.qs = def.qs;
        for (Theorem t : cfg.theorems)
            v.require(t == Theorem::T1 || t == Theorem::T2, "sweep covers theorems t1 and t2 only");
        for (double x : cfg.xs)
            v.require(x >= 0.0 && x <= 1.0,
                      "sweep x values are positions in [0, 1] relative to the domain (got " + format_double(x) + ")");
    } else if (cfg.command == Command::Coeffs) {
        for (double q : cfg.qs) v.require(q > 1.0, "coeffs needs q > 1 (got " + format_double(q) + ")");
    }

    if (!problems.empty()) throw UsageError(join_problems(problems));
    return cfg;
}

namespace {

BoundsQuadrature quadrature_for(const RunConfig& cfg)
{
    BoundsQuadrature quad;
    if (cfg.quad_tol) {
        for (QuadratureSpec* spec : {&quad.coefficients, &quad.fractional}) {
            spec->abs_tol = *cfg.quad_tol;
            spec->rel_tol = *cfg.quad_tol;
        }
    }
    return quad;
}

int status_exit(const std::vector<BoundReport>& reports)
{
    const SweepSummary s = summarize(reports);
    if (s.fail > 0) return kExitFail;
    if (s.error > 0) return kExitNumerical;
    return kExitPass;
}

std::vector<BoundReport> run_verify(const RunConfig& cfg, const VerifyOptions& opts)
{
    TestFunction fn = lookup_function(cfg.functions.front());
    if (cfg.a) fn.domain = Interval{*cfg.a, *cfg.b};
    const PhiKernel& kernel = cfg.kernels.front();
    EvalParams p;
    p.interval = fn.domain;
    p.x = cfg.xs.front();
    p.lambda = cfg.lambdas.front();
    p.alpha = cfg.alphas.front();
    p.q = cfg.qs.front();
    if (kernel.kind() == PhiKernel::Kind::PowerS)
        p.s = kernel.s();
    else if (!cfg.s_values.empty())
        p.s = cfg.s_values.front();

    switch (cfg.theorems.front()) {
    case Theorem::T1:
    case Theorem::T2: {
        BoundReport r = verify_point(fn, p, kernel, cfg.theorems.front(), opts);
        return {r};
    }
    case Theorem::LEMMA1: {
        BoundReport r = lemma1_identity_check(fn, p, opts);
        r.kernel = kernel;
        return {r};
    }
    case Theorem::HH:
        return {hermite_hadamard_check(fn, fn.domain, opts)};
    }
    return {};
}

} // namespace

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::ofstream file;
    std::ostream* sink = &out;
    if (cfg.output_path && cfg.command != Command::Selftest) {
        file.open(*cfg.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << *cfg.output_path << "'\n";
            return kExitUsage;
        }
        sink = &file;
    }

    try {
        switch (cfg.command) {
        case Command::Selftest: {
            const SelftestResult result = run_selftest();
            print_selftest(out, result);
            return result.all_passed() ? kExitPass : kExitFail;
        }
        case Command::Coeffs: {
            LedgerGrid grid;
            if (!cfg.alphas.empty()) grid.alphas = cfg.alphas;
            if (!cfg.lambdas.empty()) grid.lambdas = cfg.lambdas;
            if (!cfg.s_values.empty()) grid.s_values = cfg.s_values;
            if (!cfg.qs.empty()) grid.qs = cfg.qs;
            const auto ledger = build_ledger(grid, quadrature_for(cfg).coefficients);
            if (cfg.format == OutputFormat::Json)
                write_ledger_json(*sink, ledger);
            else
                write_ledger_csv(*sink, ledger);
            return kExitPass;
        }
        case Command::Verify:
        case Command::Sweep: {
            VerifyOptions opts;
            opts.quad = quadrature_for(cfg);
            opts.rhs_scale = cfg.rhs_scale;
            std::vector<BoundReport> reports;
            if (cfg.command == Command::Verify) {
                reports = run_verify(cfg, opts);
            } else {
                SweepPlan plan;
                plan.function_names = cfg.functions;
                plan.kernels = cfg.kernels;
                plan.theorems = cfg.theorems;
                plan.x_positions = cfg.xs;
                plan.lambdas = cfg.lambdas;
                plan.alphas = cfg.alphas;
                plan.qs = cfg.qs;
                if (cfg.a) plan.interval = Interval{*cfg.a, *cfg.b};
                reports = sweep(plan, opts, cfg.threads);
            }
            if (cfg.format == OutputFormat::Json)
                write_reports_json(*sink, reports);
            else
                write_reports_csv(*sink, reports);
            constexpr int kMaxListed = 10;
            int listed = 0;
            int unlisted = 0;
            for (const auto& r : reports) {
                if (r.status != Status::FAIL && r.status != Status::ERROR) continue;
                if (listed == kMaxListed) {
                    ++unlisted;
                    continue;
                }
                ++listed;
                err << to_string(r.status) << ' ' << r.function << ' ' << r.kernel.label() << ' '
                    << to_string(r.theorem) << " x=" << format_double(r.params.x) << " lambda="
                    << format_double(r.params.lambda) << " alpha=" << format_double(r.params.alpha)
                    << " q=" << format_double(r.params.q) << ": " << r.message << '\n';
            }
            if (unlisted > 0) err << "... and " << unlisted << " more\n";
            const SweepSummary s = summarize(reports);
            err << "summary: " << s.pass << " PASS, " << s.fail << " FAIL, " << s.hypothesis_unmet
                << " HYPOTHESIS_UNMET, " << s.error << " ERROR\n";
            return status_exit(reports);
        }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitNumerical;
}

namespace {

constexpr const char* kUsage =
    "usage: phi-ineq <selftest|verify|sweep|coeffs> [flags]\n"
    "  --fn NAME|EXPR      registry name or expression in t (lists: comma separated)\n"
    "  --kernel K          constant | power | power(S) | mt\n"
    "  --theorem T         t1 | t2 | hh | lemma1\n"
    "  --a A --b B         interval (defaults to the function's domain)\n"
    "  --x --lambda --alpha --q --s   parameter values; sweep x values are positions in [0, 1]\n"
    "  --config PATH       JSON file with the same keys (quad_tol for --quad-tol); flags win\n"
    "  --out PATH          write the report there instead of stdout\n"
    "  --format csv|json   report format (default csv)\n"
    "  --quad-tol TOL      absolute and relative quadrature tolerance\n"
    "  --threads N         sweep worker threads (0 = all cores)\n"
    "exit status: 0 pass, 1 bound violated, 2 usage, 3 numerical failure\n";

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
        out << kUsage;
        return kExitPass;
    }
    RunConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const UsageError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }
    return execute(cfg, out, err);
}

} // namespace phi_ineq
