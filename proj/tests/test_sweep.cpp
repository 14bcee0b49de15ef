#include "fdoutage/sweep.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace fdoutage;
using namespace fdoutage::sweep;

namespace {

SweepSpec small_rate_spec()
{
    SweepSpec s;
    s.variable = Variable::Rate;
    s.grid = {0.0, 0.5, 1.0};
    s.scenarios = {Scenario::TwoNodeFD, Scenario::ThreeNodeFD};
    s.li_levels = {0.0, 1e-3};
    s.methods = {Method::AnalyticGeneral, Method::AnalyticClosedForm};
    return s;
}

}  // namespace

TEST_CASE("grid expansion")
{
    SweepSpec s;
    s.range = GridRange{0.0, 4.0, 41, Spacing::Linear};
    auto xs = s.points();
    REQUIRE(xs.size() == 41);
    CHECK(xs.front() == 0.0);
    CHECK(xs.back() == 4.0);
    CHECK(xs[6] == doctest::Approx(0.6));

    s.range = GridRange{1e-4, 1e-2, 3, Spacing::Log};
    xs = s.points();
    REQUIRE(xs.size() == 3);
    CHECK(xs[1] == doctest::Approx(1e-3));
}

TEST_CASE("spec validation")
{
    SweepSpec s = small_rate_spec();
    CHECK_NOTHROW(s.validate());

    s.scenarios.clear();
    CHECK_THROWS_AS(run_sweep(s), ConfigError);

    s = small_rate_spec();
    s.grid = {0.5, 0.5};
    CHECK_THROWS_AS(s.validate(), ConfigError);

    s = small_rate_spec();
    s.grid.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);

    s = small_rate_spec();
    s.li_levels = {-1.0};
    CHECK_THROWS_AS(s.validate(), ConfigError);

    s = small_rate_spec();
    s.variable = Variable::Density;
    s.grid = {0.0, 1e-3};
    CHECK_THROWS_AS(s.validate(), ConfigError);

    s = small_rate_spec();
    s.methods.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);

    s = small_rate_spec();
    s.range = GridRange{0.0, 1.0, 3, Spacing::Log};
    s.grid.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("row layout and ordering")
{
    const auto rows = run_sweep(small_rate_spec());
    // two-node: 2 levels x 2 methods x 3 points; three-node: 1 x 2 x 3
    REQUIRE(rows.size() == 18);
    CHECK(rows[0].scenario == Scenario::TwoNodeFD);
    CHECK(rows[0].sigma_l2 == 0.0);
    CHECK(rows[0].method == Method::AnalyticGeneral);
    CHECK(rows[3].method == Method::AnalyticClosedForm);
    CHECK(rows[6].sigma_l2 == 1e-3);
    CHECK(rows[12].scenario == Scenario::ThreeNodeFD);
    for (std::size_t i = 0; i < rows.size(); i += 3) {
        CHECK(rows[i].value == 0.0);
        CHECK(rows[i + 2].value == 1.0);
    }
    for (const auto& r : rows) {
        CHECK(r.outage >= 0.0);
        CHECK(r.outage <= 1.0);
        CHECK_FALSE(r.mc_stderr.has_value());
        CHECK(r.elapsed_ms.has_value());
    }
    // general vs closed-form columns agree
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(rows[i].outage - rows[i + 3].outage) < 1e-4);
}

TEST_CASE("closed-form rows are skipped with a notice when assumptions fail")
{
    SweepSpec s = small_rate_spec();
    s.params.sigma_n2 = 1.0;
    s.params.p_b = s.params.p_u = 1e6;
    std::vector<std::string> notices;
    const auto rows = run_sweep(s, [&](const std::string& n) { notices.push_back(n); });
    REQUIRE(notices.size() == 1);
    CHECK(notices[0].find("closed-form skipped") != std::string::npos);
    for (const auto& r : rows) CHECK(r.method == Method::AnalyticGeneral);
}

TEST_CASE("fig3 preset: HD crosses the LI-free two-node curve between 0.5 and 0.7")
{
    SweepSpec s = preset("fig3").front();
    s.scenarios = {Scenario::TwoNodeFD, Scenario::HalfDuplex};
    s.li_levels = {0.0};
    s.methods = {Method::AnalyticGeneral};
    const auto rows = run_sweep(s);
    REQUIRE(rows.size() == 82);
    double crossing = -1.0;
    for (std::size_t g = 1; g < 41; ++g) {
        const double prev = rows[41 + g - 1].outage - rows[g - 1].outage;
        const double cur = rows[41 + g].outage - rows[g].outage;
        if (prev < 0.0 && cur >= 0.0) crossing = rows[g].value;
    }
    CHECK(crossing >= 0.5);
    CHECK(crossing <= 0.7);
}

TEST_CASE("fig5 preset: three-node outage is flat in density")
{
    SweepSpec s = preset("fig5").front();
    s.scenarios = {Scenario::ThreeNodeFD};
    s.methods = {Method::AnalyticGeneral};
    const auto rows = run_sweep(s);
    REQUIRE(rows.size() == 21);
    for (const auto& r : rows) CHECK(std::abs(r.outage - rows.front().outage) < 1e-3);
}

TEST_CASE("presets")
{
    CHECK(preset("fig4").size() == 3);
    CHECK(preset("fig2").front().params.sigma_n2 == 1.0);
    CHECK(preset("fig5").front().rate == 0.1);
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
    for (const char* name : {"fig2", "fig3", "fig4", "fig5"})
        for (const auto& spec : preset(name)) CHECK_NOTHROW(spec.validate());
}

TEST_CASE("compare report")
{
    SweepRow a;
    a.scenario = Scenario::ThreeNodeFD;
    a.value = 1.0;
    a.outage = 0.70;
    SweepRow m = a;
    m.method = Method::MonteCarlo;
    m.mc_stderr = 0.01;

    SUBCASE("identical values")
    {
        m.outage = 0.70;
        const auto rep = compare_report({a, m});
        REQUIRE(rep.pairs.size() == 1);
        CHECK(rep.pairs[0].z == 0.0);
        CHECK_FALSE(rep.pairs[0].flagged);
        CHECK(rep.flagged == 0);
    }
    SUBCASE("four standard errors apart")
    {
        m.outage = 0.74;
        const auto rep = compare_report({a, m});
        REQUIRE(rep.pairs.size() == 1);
        CHECK(rep.pairs[0].z == doctest::Approx(4.0));
        CHECK(rep.pairs[0].flagged);
        CHECK(rep.flagged == 1);
        CHECK(rep.flagged_fraction() == 1.0);
    }
    SUBCASE("no pairs")
    {
        const auto rep = compare_report({a});
        CHECK(rep.pairs.empty());
        std::ostringstream os;
        print_report(os, rep);
        CHECK(os.str().find("no matchable") != std::string::npos);
    }
    SUBCASE("different sigma_l2 does not pair")
    {
        m.sigma_l2 = 1e-3;
        CHECK(compare_report({a, m}).pairs.empty());
    }
}

TEST_CASE("CSV round trip preserves 10-significant-digit rendering")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> expo(-12.0, 4.0);
    std::vector<SweepRow> rows;
    for (int i = 0; i < 300; ++i) {
        SweepRow r;
        r.scenario = static_cast<Scenario>(i % 3);
        r.method = static_cast<Method>((i / 3) % 3);
        r.variable = static_cast<Variable>((i / 9) % 4);
        r.value = std::pow(10.0, expo(gen));
        r.sigma_l2 = i % 2 ? std::pow(10.0, expo(gen)) : 0.0;
        r.outage = unit(gen);
        if (r.method == Method::MonteCarlo) r.mc_stderr = unit(gen) * 1e-2;
        if (i % 5) r.elapsed_ms = unit(gen) * 1e3;
        rows.push_back(r);
    }

    std::ostringstream first;
    write_csv(first, rows);
    std::istringstream in(first.str());
    const auto parsed = read_csv(in);
    REQUIRE(parsed.size() == rows.size());
    std::ostringstream second;
    write_csv(second, parsed);
    CHECK(first.str() == second.str());

    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].scenario == rows[i].scenario);
        CHECK(parsed[i].outage == std::stod(format_number(rows[i].outage)));
        CHECK(parsed[i].mc_stderr.has_value() == rows[i].mc_stderr.has_value());
        CHECK(parsed[i].elapsed_ms.has_value() == rows[i].elapsed_ms.has_value());
        CHECK(std::abs(parsed[i].value - rows[i].value) <= 1e-9 * rows[i].value);
    }
}

TEST_CASE("CSV reader rejects malformed input")
{
    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(read_csv(bad_header), ConfigError);
    std::istringstream short_row(std::string(csv_header) + "\nthree-node,analytic,rate,1\n");
    CHECK_THROWS_AS(read_csv(short_row), ConfigError);
    std::istringstream bad_number(std::string(csv_header) + "\nthree-node,analytic,rate,x,0,0.5,,\n");
    CHECK_THROWS_AS(read_csv(bad_number), ConfigError);
}

TEST_CASE("JSON-lines mirror")
{
    auto rows = run_sweep(small_rate_spec());
    std::ostringstream os;
    write_jsonl(os, rows);
    std::istringstream is(os.str());
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["scenario"] == std::string(to_string(rows[n].scenario)));
        CHECK(j["outage"].get<double>() == rows[n].outage);
        CHECK(j["mc_stderr"].is_null());
        ++n;
    }
    CHECK(n == rows.size());
}

TEST_CASE("sweeps with Monte Carlo are reproducible")
{
    SweepSpec s;
    s.variable = Variable::Rate;
    s.grid = {0.5, 1.0};
    s.scenarios = {Scenario::TwoNodeFD, Scenario::HalfDuplex};
    s.li_levels = {0.0, 1e-4};
    s.methods = {Method::AnalyticGeneral, Method::MonteCarlo};
    s.sim.trials = 4000;
    s.sim.seed = 17;

    auto strip = [](std::vector<SweepRow> rows) {
        for (auto& r : rows) r.elapsed_ms.reset();
        return rows;
    };
    const auto a = strip(run_sweep(s));
    const auto b = strip(run_sweep(s));
    CHECK(a == b);

    std::ostringstream ca;
    std::ostringstream cb;
    write_csv(ca, a);
    write_csv(cb, b);
    CHECK(ca.str() == cb.str());

    // independent streams per grid point: the two MC rows differ
    CHECK(a[2].outage != a[3].outage);
    const auto rep = compare_report(a);
    CHECK(rep.pairs.size() == 6);
}
