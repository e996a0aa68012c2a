#include "phi_ineq/output.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>

namespace phi_ineq {

namespace {

using nlohmann::json;

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

json report_json(const BoundReport& r)
{
    json residuals = json::object();
    for (const auto& [name, value] : r.oracle_residuals) residuals[name] = number_or_null(value);
    return json{{"function", r.function},
                {"kernel", r.kernel.label()},
                {"theorem", std::string(to_string(r.theorem))},
                {"a", r.params.interval.a},
                {"b", r.params.interval.b},
                {"x", r.params.x},
                {"lambda", r.params.lambda},
                {"alpha", r.params.alpha},
                {"q", r.params.q},
                {"p", optional_number(r.params.p)},
                {"s", r.params.s},
                {"lhs", number_or_null(r.lhs)},
                {"rhs", number_or_null(r.rhs)},
                {"margin", number_or_null(r.margin)},
                {"hypothesis_ok", r.hypothesis_ok},
                {"status", std::string(to_string(r.status))},
                {"message", r.message},
                {"oracle_residuals", residuals}};
}

} // namespace

std::string format_double(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_reports_csv(std::ostream& os, const std::vector<BoundReport>& reports)
{
    os << kReportCsvHeader << '\n';
    for (const auto& r : reports) {
        os << csv_field(r.function) << ',' << csv_field(r.kernel.label()) << ',' << to_string(r.theorem) << ','
           << format_double(r.params.interval.a) << ',' << format_double(r.params.interval.b) << ','
           << format_double(r.params.x) << ',' << format_double(r.params.lambda) << ','
           << format_double(r.params.alpha) << ',' << format_double(r.params.q) << ','
           << (r.params.p ? format_double(*r.params.p) : std::string()) << ',' << format_double(r.params.s) << ','
           << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.margin) << ','
           << (r.hypothesis_ok ? "true" : "false") << ',' << to_string(r.status) << '\n';
    }
}

void write_reports_json(std::ostream& os, const std::vector<BoundReport>& reports)
{
    json list = json::array();
    for (const auto& r : reports) list.push_back(report_json(r));
    const SweepSummary s = summarize(reports);
    const json doc{{"reports", list},
                   {"summary",
                    {{"pass", s.pass}, {"fail", s.fail}, {"hypothesis_unmet", s.hypothesis_unmet}, {"error", s.error}}}};
    os << doc.dump(2) << '\n';
}

void write_ledger_csv(std::ostream& os, const std::vector<DiscrepancyEntry>& ledger)
{
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    os << kLedgerCsvHeader << '\n';
    for (const auto& e : ledger) {
        os << to_string(e.name) << ',' << format_double(e.alpha) << ',' << format_double(e.lambda) << ',' << opt(e.s)
           << ',' << opt(e.p) << ',' << opt(e.printed) << ',' << format_double(e.oracle) << ',' << opt(e.abs_diff)
           << ',' << to_string(e.verdict) << ',' << (e.method ? std::string(to_string(*e.method)) : std::string())
           << ',' << csv_field(e.note) << '\n';
    }
}

void write_ledger_json(std::ostream& os, const std::vector<DiscrepancyEntry>& ledger)
{
    json entries = json::array();
    json summary = json::object();
    for (const auto& e : ledger) {
        entries.push_back(json{{"coefficient", std::string(to_string(e.name))},
                               {"alpha", e.alpha},
                               {"lambda", e.lambda},
                               {"s", optional_number(e.s)},
                               {"p", optional_number(e.p)},
                               {"printed", optional_number(e.printed)},
                               {"oracle", number_or_null(e.oracle)},
                               {"abs_diff", optional_number(e.abs_diff)},
                               {"verdict", std::string(to_string(e.verdict))},
                               {"method", e.method ? json(std::string(to_string(*e.method))) : json(nullptr)},
                               {"note", e.note}});
        json& counts = summary[std::string(to_string(e.name))];
        if (counts.is_null()) counts = json{{"AGREES", 0}, {"DISAGREES", 0}, {"PRINTED_UNDEFINED", 0}};
        counts[std::string(to_string(e.verdict))] = counts[std::string(to_string(e.verdict))].get<int>() + 1;
    }
    const json doc{{"entries", entries}, {"summary", summary}};
    os << doc.dump(2) << '\n';
}

} // namespace phi_ineq
