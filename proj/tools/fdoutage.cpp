// fdoutage: outage probability of full-duplex cellular downlinks.
//
//   fdoutage analytic --scenario three-node --rate 1
//   fdoutage simulate --scenario two-node --rate 1 --sigma-l2 1e-3 --trials 100000
//   fdoutage sweep --preset fig3 --out fig3.csv
//   fdoutage compare --preset fig3 --methods analytic,mc
//
// Exit codes: 0 ok, 2 configuration error, 3 quadrature failure,
// 4 compare found too many analytic/mc disagreements, 1 anything else.

#include "fdoutage/analytic.hpp"
#include "fdoutage/closed_form.hpp"
#include "fdoutage/simulation.hpp"
#include "fdoutage/sweep.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace fdoutage;
using sweep::SweepRow;
using sweep::SweepSpec;

enum ExitCode { Ok = 0, Failure = 1, BadConfig = 2, QuadratureFailed = 3, CompareFailed = 4 };

struct Options {
    NetworkParams params;
    double rate = 1.0;
    QuadratureConfig quad;
    sim::SimConfig sim;
    std::string mode = "matched";

    std::vector<std::string> scenarios;
    std::string method = "analytic";
    std::vector<std::string> methods;

    std::string preset;
    std::string variable = "rate";
    std::vector<double> grid;
    double grid_min = 0.0;
    double grid_max = 4.0;
    int grid_steps = 41;
    std::string spacing = "linear";
    std::vector<double> li_levels;

    std::string in;
    double z_limit = 3.0;
    double max_flag_fraction = 0.01;

    std::string out;
    std::string format = "csv";
    bool no_timing = false;
    int threads = 0;
};

// Options the user set explicitly (flag or config file), used to override presets.
struct Overrides {
    std::vector<std::pair<const CLI::Option*, std::function<void(SweepSpec&)>>> items;

    void apply(SweepSpec& spec) const
    {
        for (const auto& [opt, fn] : items)
            if (opt->count() > 0) fn(spec);
    }
};

std::vector<Scenario> scenarios_or_all(const std::vector<std::string>& names)
{
    if (names.empty()) return {Scenario::TwoNodeFD, Scenario::ThreeNodeFD, Scenario::HalfDuplex};
    std::vector<Scenario> out;
    for (const auto& n : names) out.push_back(parse_scenario(n));
    return out;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names)
{
    std::vector<Method> out;
    for (const auto& n : names) out.push_back(sweep::parse_method(n));
    return out;
}

void write_rows(std::ostream& os, const std::vector<SweepRow>& rows, const std::string& format)
{
    if (format == "jsonl")
        sweep::write_jsonl(os, rows);
    else
        sweep::write_csv(os, rows);
}

void emit(const Options& o, std::vector<SweepRow> rows, const std::string& suffix = {})
{
    if (o.no_timing)
        for (auto& r : rows) r.elapsed_ms.reset();
    if (o.out.empty()) {
        write_rows(std::cout, rows, o.format);
        return;
    }
    std::filesystem::path path(o.out);
    if (!suffix.empty()) path.replace_filename(path.stem().string() + suffix + path.extension().string());
    std::ofstream file(path);
    if (!file) throw ConfigError("cannot open output file '" + path.string() + "'");
    write_rows(file, rows, o.format);
    std::cerr << "wrote " << rows.size() << " rows to " << path.string() << '\n';
}

void notice(const std::string& msg) { std::cerr << "note: " << msg << '\n'; }

NetworkParams checked_params(const Options& o)
{
    o.params.validate();
    if (!(o.rate >= 0.0)) throw ConfigError("rate must be >= 0");
    return o.params;
}

SweepRow single_row(const OutageEstimate& e, double elapsed_ms)
{
    SweepRow r;
    r.scenario = e.scenario;
    r.method = e.method;
    r.variable = sweep::Variable::Rate;
    r.value = e.rate;
    r.sigma_l2 = e.scenario == Scenario::TwoNodeFD ? e.params.sigma_l2 : 0.0;
    r.outage = e.value;
    if (e.method == Method::MonteCarlo) r.mc_stderr = e.std_error;
    r.elapsed_ms = elapsed_ms;
    return r;
}

template <typename F>
SweepRow timed(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    const OutageEstimate e = f();
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    return single_row(e, dt.count());
}

int run_analytic(const Options& o)
{
    const NetworkParams p = checked_params(o);
    o.quad.validate();
    const Method method = sweep::parse_method(o.method);
    if (method == Method::MonteCarlo) throw ConfigError("use the simulate subcommand for --method mc");
    std::vector<SweepRow> rows;
    for (Scenario sc : scenarios_or_all(o.scenarios)) {
        rows.push_back(timed([&] {
            return method == Method::AnalyticClosedForm ? closed_form::outage(sc, p, o.rate, o.quad)
                                                        : analytic::outage(sc, p, o.rate, o.quad);
        }));
    }
    emit(o, rows);
    return Ok;
}

int run_simulate(const Options& o)
{
    const NetworkParams p = checked_params(o);
    sim::SimConfig cfg = o.sim;
    cfg.mode = sim::parse_mode(o.mode);
    cfg.validate();
    std::vector<SweepRow> rows;
    for (Scenario sc : scenarios_or_all(o.scenarios))
        rows.push_back(timed([&] { return sim::estimate_outage(p, sc, o.rate, cfg); }));
    emit(o, rows);
    return Ok;
}

std::vector<SweepSpec> build_specs(const Options& o, const Overrides& overrides,
                                   std::vector<Method> default_methods)
{
    std::vector<SweepSpec> specs;
    if (!o.preset.empty()) {
        specs = sweep::preset(o.preset);
    } else {
        SweepSpec s;
        s.variable = sweep::parse_variable(o.variable);
        if (o.spacing != "linear" && o.spacing != "log")
            throw ConfigError("spacing must be linear or log");
        if (o.grid.empty())
            s.range = sweep::GridRange{o.grid_min, o.grid_max, o.grid_steps,
                                       o.spacing == "log" ? sweep::Spacing::Log : sweep::Spacing::Linear};
        s.grid = o.grid;
        s.scenarios = scenarios_or_all(o.scenarios);
        s.li_levels = o.li_levels;
        s.params = o.params;
        s.rate = o.rate;
        s.methods = std::move(default_methods);
        specs.push_back(std::move(s));
    }
    for (auto& s : specs) {
        overrides.apply(s);
        s.quad = o.quad;
        s.sim.trials = o.sim.trials;
        s.sim.seed = o.sim.seed;
        s.sim.window_factor = o.sim.window_factor;
        s.sim.mode = sim::parse_mode(o.mode);
        s.validate();
    }
    return specs;
}

std::string rate_suffix(const SweepSpec& s) { return "_R" + sweep::format_number(s.rate); }

int run_sweep_cmd(const Options& o, const Overrides& overrides)
{
    const auto specs = build_specs(o, overrides, {Method::AnalyticGeneral});
    for (const auto& s : specs) {
        auto rows = sweep::run_sweep(s, notice);
        if (specs.size() > 1 && o.out.empty()) std::cout << "# rate=" << sweep::format_number(s.rate) << '\n';
        emit(o, std::move(rows), specs.size() > 1 ? rate_suffix(s) : std::string{});
    }
    return Ok;
}

int run_compare(const Options& o, const Overrides& overrides)
{
    std::vector<SweepRow> rows;
    if (!o.in.empty()) {
        std::ifstream file(o.in);
        if (!file) throw ConfigError("cannot open input file '" + o.in + "'");
        rows = sweep::read_csv(file);
    } else {
        for (const auto& s : build_specs(o, overrides, {Method::AnalyticGeneral, Method::MonteCarlo})) {
            auto part = sweep::run_sweep(s, notice);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        if (!o.out.empty()) emit(o, rows);
    }
    const auto report = sweep::compare_report(rows, o.z_limit);
    sweep::print_report(std::cout, report);
    if (report.pairs.empty()) return Ok;
    return report.flagged_fraction() > o.max_flag_fraction ? CompareFailed : Ok;
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Outage probability of full-duplex cellular downlinks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with option defaults")->envname("FDOUTAGE_CONFIG");

    Overrides ov;
    auto param = [&](const std::string& name, double& field, const std::string& help,
                     std::function<void(SweepSpec&, double)> set) {
        auto* opt = app.add_option(name, field, help)->capture_default_str();
        ov.items.emplace_back(opt, [&field, set](SweepSpec& s) { set(s, field); });
    };
    param("--lambda", o.params.lambda, "BS and user density", [](SweepSpec& s, double v) { s.params.lambda = v; });
    param("--alpha1", o.params.alpha1, "BS-user path-loss exponent",
          [](SweepSpec& s, double v) { s.params.alpha1 = v; });
    param("--alpha2", o.params.alpha2, "user-user path-loss exponent",
          [](SweepSpec& s, double v) { s.params.alpha2 = v; });
    param("--pb", o.params.p_b, "BS transmit power", [](SweepSpec& s, double v) { s.params.p_b = v; });
    param("--pu", o.params.p_u, "user transmit power", [](SweepSpec& s, double v) { s.params.p_u = v; });
    param("--sigma-n2", o.params.sigma_n2, "noise power", [](SweepSpec& s, double v) { s.params.sigma_n2 = v; });
    param("--sigma-l2", o.params.sigma_l2, "residual loop-interference gain",
          [](SweepSpec& s, double v) { s.params.sigma_l2 = v; });
    param("--mu", o.params.mu, "Rayleigh fading rate", [](SweepSpec& s, double v) { s.params.mu = v; });
    param("--rate", o.rate, "target rate in bits per channel use", [](SweepSpec& s, double v) { s.rate = v; });

    app.add_option("--rel-tol", o.quad.rel_tol_outer, "relative tolerance of the outer integral")
        ->capture_default_str();
    app.add_option("--rel-tol-inner", o.quad.rel_tol_inner, "relative tolerance of inner integrals")
        ->capture_default_str();
    app.add_option("--max-subdivisions", o.quad.max_subdivisions, "adaptive quadrature budget")
        ->capture_default_str();

    app.add_option("--trials", o.sim.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--seed", o.sim.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--mode", o.mode, "two-node simulation mode: matched or physical")->capture_default_str();
    app.add_option("--window-factor", o.sim.window_factor, "simulation window radius in mean nearest-BS units")
        ->capture_default_str();
    app.add_option("--threads", o.threads, "OpenMP threads (0 keeps the runtime default)");

    auto* scenarios_opt = app.add_option("--scenario,--scenarios", o.scenarios,
                                         "two-node, three-node, half-duplex (default: all)")
                              ->delimiter(',');
    app.add_option("--method", o.method, "analytic or closed-form")->capture_default_str();
    auto* methods_opt = app.add_option("--methods", o.methods, "sweep methods: analytic, closed-form, mc")
                            ->delimiter(',');
    ov.items.emplace_back(scenarios_opt, [&o](SweepSpec& s) { s.scenarios = scenarios_or_all(o.scenarios); });
    ov.items.emplace_back(methods_opt, [&o](SweepSpec& s) { s.methods = parse_methods(o.methods); });

    app.add_option("--preset", o.preset, "fig2, fig3, fig4 or fig5");
    app.add_option("--variable", o.variable, "bs_power, rate, residual_li or density")->capture_default_str();
    app.add_option("--grid", o.grid, "explicit grid values")->delimiter(',');
    app.add_option("--min", o.grid_min, "grid minimum")->capture_default_str();
    app.add_option("--max", o.grid_max, "grid maximum")->capture_default_str();
    app.add_option("--steps", o.grid_steps, "grid points")->capture_default_str();
    app.add_option("--spacing", o.spacing, "linear or log")->capture_default_str();
    auto* li_opt = app.add_option("--li-levels", o.li_levels, "sigma_l2 values for two-node rows")->delimiter(',');
    ov.items.emplace_back(li_opt, [&o](SweepSpec& s) { s.li_levels = o.li_levels; });

    app.add_option("--in", o.in, "compare: read rows from this CSV instead of running a sweep");
    app.add_option("--z-limit", o.z_limit, "compare: flag pairs beyond this many standard errors")
        ->capture_default_str();
    app.add_option("--max-flag-fraction", o.max_flag_fraction, "compare: tolerated fraction of flagged pairs")
        ->capture_default_str();

    app.add_option("--out", o.out, "output file (stdout when absent)");
    app.add_option("--format", o.format, "csv or jsonl")->capture_default_str()->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_flag("--no-timing", o.no_timing, "leave elapsed_ms empty so reruns are byte-identical");

    auto* analytic_cmd = app.add_subcommand("analytic", "quadrature or closed-form outage at one rate")->fallthrough();
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo outage at one rate")->fallthrough();
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV or JSON lines")->fallthrough();
    auto* compare_cmd = app.add_subcommand("compare", "score Monte Carlo rows against analytic rows")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadConfig;
    }

    try {
        if (o.threads < 0) throw ConfigError("threads must be >= 0");
        if (o.threads > 0) omp_set_num_threads(o.threads);
        if (*analytic_cmd) return run_analytic(o);
        if (*simulate_cmd) return run_simulate(o);
        if (*sweep_cmd) return run_sweep_cmd(o, ov);
        if (*compare_cmd) return run_compare(o, ov);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return BadConfig;
    } catch (const QuadratureError& e) {
        std::cerr << "quadrature failure: " << e.what() << '\n';
        return QuadratureFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Failure;
    }
    return Failure;
}
