#include "fdoutage/sweep.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

namespace fdoutage::sweep {

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
    os << csv_header << '\n';
    for (const auto& r : rows) {
        os << to_string(r.scenario) << ',' << to_string(r.method) << ',' << to_string(r.variable)
           << ',' << format_number(r.value) << ',' << format_number(r.sigma_l2) << ','
           << format_number(r.outage) << ',';
        if (r.mc_stderr) os << format_number(*r.mc_stderr);
        os << ',';
        if (r.elapsed_ms) os << format_number(*r.elapsed_ms);
        os << '\n';
    }
}

void write_jsonl(std::ostream& os, const std::vector<SweepRow>& rows)
{
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["scenario"] = to_string(r.scenario);
        j["method"] = to_string(r.method);
        j["variable"] = to_string(r.variable);
        j["value"] = r.value;
        j["sigma_l2"] = r.sigma_l2;
        j["outage"] = r.outage;
        j["mc_stderr"] = r.mc_stderr ? nlohmann::ordered_json(*r.mc_stderr) : nullptr;
        j["elapsed_ms"] = r.elapsed_ms ? nlohmann::ordered_json(*r.elapsed_ms) : nullptr;
        os << j.dump() << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> fields(1);
    for (char c : line) {
        if (c == ',') fields.emplace_back();
        else if (c != '\r') fields.back() += c;
    }
    return fields;
}

double parse_number(const std::string& s, std::size_t line_no)
{
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        throw ConfigError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

}  // namespace

std::vector<SweepRow> read_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != csv_header) throw ConfigError("unexpected CSV header: " + line);

    std::vector<SweepRow> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split(line);
        if (f.size() != 8)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 8 fields");
        SweepRow r;
        r.scenario = parse_scenario(f[0]);
        r.method = parse_method(f[1]);
        r.variable = parse_variable(f[2]);
        r.value = parse_number(f[3], line_no);
        r.sigma_l2 = parse_number(f[4], line_no);
        r.outage = parse_number(f[5], line_no);
        if (!f[6].empty()) r.mc_stderr = parse_number(f[6], line_no);
        if (!f[7].empty()) r.elapsed_ms = parse_number(f[7], line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace fdoutage::sweep
