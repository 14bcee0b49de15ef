#include "fdoutage/model.hpp"

#include <cmath>
#include <numbers>

namespace fdoutage {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) throw ConfigError(what);
}

}  // namespace

void NetworkParams::validate() const
{
    require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
    require(std::isfinite(alpha1) && alpha1 > 2.0, "alpha1 must be > 2");
    require(std::isfinite(alpha2) && alpha2 > 2.0, "alpha2 must be > 2");
    require(std::isfinite(p_b) && p_b > 0.0, "p_b must be > 0");
    require(std::isfinite(p_u) && p_u > 0.0, "p_u must be > 0");
    require(std::isfinite(sigma_n2) && sigma_n2 >= 0.0, "sigma_n2 must be >= 0");
    require(std::isfinite(sigma_l2) && sigma_l2 >= 0.0, "sigma_l2 must be >= 0");
    require(std::isfinite(mu) && mu > 0.0, "mu must be > 0");
}

std::string_view to_string(Scenario s)
{
    switch (s) {
    case Scenario::TwoNodeFD: return "two-node";
    case Scenario::ThreeNodeFD: return "three-node";
    case Scenario::HalfDuplex: return "half-duplex";
    }
    return "?";
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::AnalyticGeneral: return "analytic";
    case Method::AnalyticClosedForm: return "closed-form";
    case Method::MonteCarlo: return "mc";
    }
    return "?";
}

Scenario parse_scenario(std::string_view name)
{
    if (name == "two-node") return Scenario::TwoNodeFD;
    if (name == "three-node") return Scenario::ThreeNodeFD;
    if (name == "half-duplex") return Scenario::HalfDuplex;
    throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

double threshold_from_rate(double rate, Scenario scenario)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw ConfigError("rate must be a finite value >= 0");
    const double bits = scenario == Scenario::HalfDuplex ? 2.0 * rate : rate;
    return std::expm1(bits * std::numbers::ln2);
}

double nearest_bs_distance_pdf(double r, double lambda)
{
    if (!(r >= 0.0)) throw ConfigError("distance must be >= 0");
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    constexpr double pi = std::numbers::pi;
    return 2.0 * pi * lambda * r * std::exp(-lambda * pi * r * r);
}

}  // namespace fdoutage
