#pragma once

#include "fdoutage/model.hpp"
#include "fdoutage/quadrature.hpp"
#include "fdoutage/simulation.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdoutage::sweep {

enum class Variable { BsPower, Rate, ResidualLi, Density };

std::string_view to_string(Variable v);
Variable parse_variable(std::string_view name);
Method parse_method(std::string_view name);

enum class Spacing { Linear, Log };

struct GridRange {
    double min = 0.0;
    double max = 1.0;
    int steps = 2;
    Spacing spacing = Spacing::Linear;
};

struct SweepSpec {
    Variable variable = Variable::Rate;
    /// Explicit grid; when empty, `range` is expanded instead.
    std::vector<double> grid;
    std::optional<GridRange> range;
    std::vector<Scenario> scenarios;
    /// sigma_l2 values applied to two-node runs; empty means params.sigma_l2.
    std::vector<double> li_levels;
    NetworkParams params;
    /// Target rate used when `variable` is not Rate.
    double rate = 0.1;
    std::vector<Method> methods;
    QuadratureConfig quad;
    sim::SimConfig sim;

    /// Throws ConfigError describing the first invalid field.
    void validate() const;
    std::vector<double> points() const;
};

struct SweepRow {
    Scenario scenario = Scenario::TwoNodeFD;
    Method method = Method::AnalyticGeneral;
    Variable variable = Variable::Rate;
    double value = 0.0;
    double sigma_l2 = 0.0;
    double outage = 0.0;
    std::optional<double> mc_stderr;
    std::optional<double> elapsed_ms;

    bool operator==(const SweepRow&) const = default;
};

/// Receives human-readable notices (e.g. skipped closed-form rows).
using NoticeSink = std::function<void(const std::string&)>;

/// One row per scenario x sigma_l2 level x method x grid point, in that order.
/// Closed-form rows are emitted only where the special-case assumptions hold.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const NoticeSink& notice = {});

struct ComparePair {
    Scenario scenario;
    Variable variable;
    double value;
    double sigma_l2;
    double analytic;
    double mc;
    double mc_stderr;
    double z;
    bool flagged;
};

struct CompareReport {
    std::vector<ComparePair> pairs;
    std::size_t flagged = 0;
    double max_z = 0.0;
    double z_limit = 3.0;

    double flagged_fraction() const
    {
        return pairs.empty() ? 0.0 : static_cast<double>(flagged) / static_cast<double>(pairs.size());
    }
};

/// Pairs analytic (general quadrature) rows with mc rows on
/// (scenario, variable, value, sigma_l2) and scores |analytic - mc| / stderr.
CompareReport compare_report(const std::vector<SweepRow>& rows, double z_limit = 3.0);
void print_report(std::ostream& os, const CompareReport& report);

// Named presets fig2, fig3, fig4 and fig5. fig4 returns one spec per rate.
std::vector<SweepSpec> preset(std::string_view name);

// CSV / JSON-lines I/O. Numbers are rendered with 10 significant digits.
inline constexpr std::string_view csv_header =
    "scenario,method,variable,value,sigma_l2,outage,mc_stderr,elapsed_ms";

std::string format_number(double v);
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_jsonl(std::ostream& os, const std::vector<SweepRow>& rows);
/// Throws ConfigError on a malformed header or row.
std::vector<SweepRow> read_csv(std::istream& is);

}  // namespace fdoutage::sweep
