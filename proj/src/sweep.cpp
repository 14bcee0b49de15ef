#include "fdoutage/sweep.hpp"

#include "fdoutage/analytic.hpp"
#include "fdoutage/closed_form.hpp"
#include "random_stream.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace fdoutage::sweep {

std::string_view to_string(Variable v)
{
    switch (v) {
    case Variable::BsPower: return "bs_power";
    case Variable::Rate: return "rate";
    case Variable::ResidualLi: return "residual_li";
    case Variable::Density: return "density";
    }
    return "?";
}

Variable parse_variable(std::string_view name)
{
    if (name == "bs_power") return Variable::BsPower;
    if (name == "rate") return Variable::Rate;
    if (name == "residual_li") return Variable::ResidualLi;
    if (name == "density") return Variable::Density;
    throw ConfigError("unknown sweep variable '" + std::string(name) + "'");
}

Method parse_method(std::string_view name)
{
    if (name == "analytic") return Method::AnalyticGeneral;
    if (name == "closed-form") return Method::AnalyticClosedForm;
    if (name == "mc") return Method::MonteCarlo;
    throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::vector<double> SweepSpec::points() const
{
    if (!grid.empty() || !range) return grid;
    const GridRange& g = *range;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(g.steps, 0)));
    for (int i = 0; i < g.steps; ++i) {
        const double t = g.steps == 1 ? 0.0 : static_cast<double>(i) / (g.steps - 1);
        if (g.spacing == Spacing::Linear) {
            out.push_back(i == g.steps - 1 && g.steps > 1 ? g.max : g.min + t * (g.max - g.min));
        } else {
            const double lo = std::log10(g.min);
            const double hi = std::log10(g.max);
            out.push_back(std::pow(10.0, lo + t * (hi - lo)));
        }
    }
    return out;
}

namespace {

NetworkParams params_at(const SweepSpec& spec, double x)
{
    NetworkParams p = spec.params;
    switch (spec.variable) {
    case Variable::BsPower:
        p.p_u = x * (spec.params.p_u / spec.params.p_b);
        p.p_b = x;
        break;
    case Variable::ResidualLi: p.sigma_l2 = x; break;
    case Variable::Density: p.lambda = x; break;
    case Variable::Rate: break;
    }
    return p;
}

}  // namespace

void SweepSpec::validate() const
{
    if (scenarios.empty()) throw ConfigError("sweep needs at least one scenario");
    if (methods.empty()) throw ConfigError("sweep needs at least one method");
    if (grid.empty() && range) {
        if (range->steps < 1) throw ConfigError("grid steps must be >= 1");
        if (!(range->min <= range->max)) throw ConfigError("grid min must not exceed max");
        if (range->steps > 1 && range->min == range->max)
            throw ConfigError("grid with several steps needs min < max");
        if (range->spacing == Spacing::Log && !(range->min > 0.0))
            throw ConfigError("log-spaced grid needs min > 0");
    }
    const auto xs = points();
    if (xs.empty()) throw ConfigError("sweep grid is empty");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw ConfigError("sweep grid must be strictly increasing");
    for (double level : li_levels)
        if (!(level >= 0.0)) throw ConfigError("li_levels must be >= 0");
    if (!(rate >= 0.0)) throw ConfigError("rate must be >= 0");

    params.validate();
    for (double x : xs) {
        if (variable == Variable::Rate && !(x >= 0.0)) throw ConfigError("rate grid values must be >= 0");
        params_at(*this, x).validate();
    }
    const bool analytic_like = std::any_of(methods.begin(), methods.end(),
                                           [](Method m) { return m != Method::MonteCarlo; });
    if (analytic_like) {
        quad.validate();
        if (params.mu != 1.0) throw ConfigError("analytic methods assume mu = 1");
    }
    if (std::find(methods.begin(), methods.end(), Method::MonteCarlo) != methods.end()) sim.validate();
}

namespace {

struct Task {
    Scenario scenario;
    Method method;
    std::size_t level_index;
    std::size_t grid_index;
    NetworkParams params;
    double rate;
    double sigma_l2;
    double x;
};

double evaluate(const Task& task, const SweepSpec& spec, std::optional<double>& stderr_out)
{
    switch (task.method) {
    case Method::AnalyticGeneral:
        return analytic::outage(task.scenario, task.params, task.rate, spec.quad).value;
    case Method::AnalyticClosedForm:
        return closed_form::outage(task.scenario, task.params, task.rate, spec.quad).value;
    case Method::MonteCarlo: {
        sim::SimConfig cfg = spec.sim;
        cfg.seed = detail::stream_key(spec.sim.seed, static_cast<std::uint64_t>(task.scenario),
                                      task.level_index, task.grid_index);
        const auto e = sim::estimate_outage(task.params, task.scenario, task.rate, cfg);
        stderr_out = e.std_error;
        return e.value;
    }
    }
    return 0.0;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const NoticeSink& notice)
{
    spec.validate();
    const auto xs = spec.points();

    std::vector<Task> tasks;
    std::size_t skipped = 0;
    for (Scenario s : spec.scenarios) {
        std::vector<double> levels{0.0};
        if (spec.variable == Variable::ResidualLi) {
            levels = {0.0};  // sigma_l2 follows the grid value
        } else if (s == Scenario::TwoNodeFD) {
            levels = spec.li_levels.empty() ? std::vector<double>{spec.params.sigma_l2} : spec.li_levels;
        }
        for (std::size_t l = 0; l < levels.size(); ++l) {
            for (Method m : spec.methods) {
                for (std::size_t g = 0; g < xs.size(); ++g) {
                    Task t{s, m, l, g, params_at(spec, xs[g]), spec.rate, 0.0, xs[g]};
                    if (spec.variable == Variable::Rate) t.rate = xs[g];
                    if (spec.variable != Variable::ResidualLi) t.params.sigma_l2 = levels[l];
                    t.sigma_l2 = t.params.sigma_l2;
                    if (m == Method::AnalyticClosedForm && !closed_form::applicable(t.params)) {
                        ++skipped;
                        continue;
                    }
                    tasks.push_back(t);
                }
            }
        }
    }
    if (skipped > 0 && notice) {
        notice("closed-form skipped at " + std::to_string(skipped) +
               " points: requires alpha1 = alpha2 = 4, p_b = p_u, sigma_n2 = 0");
    }

    std::vector<SweepRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());

    auto run_task = [&](std::size_t i) {
        const Task& t = tasks[i];
        SweepRow& row = rows[i];
        row.scenario = t.scenario;
        row.method = t.method;
        row.variable = spec.variable;
        row.value = t.x;
        row.sigma_l2 = t.sigma_l2;
        const auto start = std::chrono::steady_clock::now();
        try {
            row.outage = evaluate(t, spec, row.mc_stderr);
        } catch (...) {
            errors[i] = std::current_exception();
        }
        row.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    // Analytic points are independent and single-threaded each; MC points
    // parallelize internally over trials.
    const auto n = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i)
        if (tasks[static_cast<std::size_t>(i)].method != Method::MonteCarlo) run_task(static_cast<std::size_t>(i));
    for (std::size_t i = 0; i < tasks.size(); ++i)
        if (tasks[i].method == Method::MonteCarlo) run_task(i);

    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

CompareReport compare_report(const std::vector<SweepRow>& rows, double z_limit)
{
    using Key = std::tuple<int, int, double, double>;
    std::map<Key, const SweepRow*> analytic_rows;
    std::map<Key, const SweepRow*> closed_rows;
    std::vector<std::pair<Key, const SweepRow*>> mc_rows;
    for (const auto& r : rows) {
        const Key k{static_cast<int>(r.scenario), static_cast<int>(r.variable), r.value, r.sigma_l2};
        switch (r.method) {
        case Method::AnalyticGeneral: analytic_rows[k] = &r; break;
        case Method::AnalyticClosedForm: closed_rows[k] = &r; break;
        case Method::MonteCarlo: mc_rows.emplace_back(k, &r); break;
        }
    }

    CompareReport report;
    report.z_limit = z_limit;
    for (const auto& [key, mc] : mc_rows) {
        const SweepRow* ref = nullptr;
        if (auto it = analytic_rows.find(key); it != analytic_rows.end()) ref = it->second;
        else if (auto jt = closed_rows.find(key); jt != closed_rows.end()) ref = jt->second;
        if (!ref) continue;

        const double se = mc->mc_stderr.value_or(0.0);
        const double diff = std::abs(ref->outage - mc->outage);
        double z = 0.0;
        if (se > 0.0) z = diff / se;
        else if (diff > 0.0) z = std::numeric_limits<double>::infinity();

        ComparePair pair{mc->scenario, mc->variable, mc->value, mc->sigma_l2,
                         ref->outage, mc->outage, se, z, z > z_limit};
        if (pair.flagged) ++report.flagged;
        report.max_z = std::max(report.max_z, z);
        report.pairs.push_back(pair);
    }
    return report;
}

void print_report(std::ostream& os, const CompareReport& report)
{
    if (report.pairs.empty()) {
        os << "no matchable analytic/mc pairs\n";
        return;
    }
    os << "scenario,variable,value,sigma_l2,analytic,mc,mc_stderr,z,flagged\n";
    for (const auto& p : report.pairs) {
        os << to_string(p.scenario) << ',' << to_string(p.variable) << ',' << format_number(p.value)
           << ',' << format_number(p.sigma_l2) << ',' << format_number(p.analytic) << ','
           << format_number(p.mc) << ',' << format_number(p.mc_stderr) << ','
           << format_number(p.z) << ',' << (p.flagged ? "yes" : "no") << '\n';
    }
    os << "# pairs=" << report.pairs.size() << " flagged=" << report.flagged
       << " flagged_fraction=" << format_number(report.flagged_fraction())
       << " max_z=" << format_number(report.max_z) << " z_limit=" << format_number(report.z_limit)
       << '\n';
}

std::vector<SweepSpec> preset(std::string_view name)
{
    const std::vector<Scenario> all{Scenario::TwoNodeFD, Scenario::ThreeNodeFD, Scenario::HalfDuplex};
    SweepSpec base;
    base.scenarios = all;
    base.methods = {Method::AnalyticGeneral, Method::AnalyticClosedForm};
    base.li_levels = {0.0, 1e-5, 1e-3};

    if (name == "fig2") {
        base.variable = Variable::BsPower;
        base.range = GridRange{1e-2, 1e8, 41, Spacing::Log};
        base.params.sigma_n2 = 1.0;
        base.rate = 0.1;
        base.methods = {Method::AnalyticGeneral};
        return {base};
    }
    if (name == "fig3") {
        base.variable = Variable::Rate;
        base.range = GridRange{0.0, 4.0, 41, Spacing::Linear};
        return {base};
    }
    if (name == "fig4") {
        base.variable = Variable::ResidualLi;
        base.range = GridRange{1e-6, 1e-1, 21, Spacing::Log};
        base.scenarios = {Scenario::TwoNodeFD, Scenario::ThreeNodeFD};
        base.li_levels.clear();
        std::vector<SweepSpec> specs;
        for (double r : {0.5, 1.0, 2.0}) {
            base.rate = r;
            specs.push_back(base);
        }
        return specs;
    }
    if (name == "fig5") {
        base.variable = Variable::Density;
        base.range = GridRange{1e-4, 1e-2, 21, Spacing::Log};
        base.rate = 0.1;
        base.li_levels = {0.0, 1e-3, 1e-1};
        return {base};
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (fig2, fig3, fig4, fig5)");
}

}  // namespace fdoutage::sweep
