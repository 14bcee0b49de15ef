#include "fdoutage/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fdoutage::closed_form {

namespace {

constexpr double pi = std::numbers::pi;

void check_rate(double rate)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw ConfigError("rate must be a finite value >= 0");
}

OutageEstimate make_estimate(Scenario s, double rate, double value)
{
    OutageEstimate e;
    e.value = std::clamp(value, 0.0, 1.0);
    e.method = Method::AnalyticClosedForm;
    e.scenario = s;
    e.rate = rate;
    return e;
}

}  // namespace

bool applicable(const NetworkParams& p)
{
    return p.alpha1 == 4.0 && p.alpha2 == 4.0 && p.p_b == p.p_u && p.sigma_n2 == 0.0;
}

double f_u(double u, double rate, double lambda)
{
    if (!(u >= 0.0)) throw ConfigError("u must be >= 0");
    const double root_t = std::sqrt(threshold_from_rate(rate, Scenario::TwoNodeFD));
    return std::exp(-pi * lambda * u * (1.0 + root_t * std::atan(root_t)));
}

double f_uv(double u, double rate, double lambda, const QuadratureConfig& quad)
{
    if (!(u >= 0.0)) throw ConfigError("u must be >= 0");
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    quad.validate();
    const double root_t = std::sqrt(threshold_from_rate(rate, Scenario::TwoNodeFD));
    const double b = pi * lambda * u * root_t;
    if (b == 0.0) return 1.0 / (pi * lambda);

    // q = pi*lambda*v, then w = exp(-q) maps [0, inf) onto (0, 1].
    auto f = [b](double w) { return std::exp(-b * arccot(-std::log(w) / b)); };
    return integrate(f, 0.0, 1.0, quad.rel_tol_inner, quad.max_subdivisions).value / (pi * lambda);
}

OutageEstimate pi2_closed(double rate, double lambda, double sigma_l2, const QuadratureConfig& quad)
{
    check_rate(rate);
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
    if (!(sigma_l2 >= 0.0)) throw ConfigError("sigma_l2 must be >= 0");
    quad.validate();

    const double threshold = threshold_from_rate(rate, Scenario::TwoNodeFD);
    if (threshold == 0.0) return make_estimate(Scenario::TwoNodeFD, rate, 0.0);

    // q = pi*lambda*u; f_u(u) <= exp(-q) bounds the truncation point.
    const double pl = pi * lambda;
    auto f = [&](double q) {
        const double u = q / pl;
        return f_u(u, rate, lambda) * pl * f_uv(u, rate, lambda, quad) /
               (1.0 + sigma_l2 * threshold * u * u);
    };
    const double q_max = std::log(1.0 / quad.tail_cut);
    const double cov = integrate(f, 0.0, q_max, quad.rel_tol_outer, quad.max_subdivisions).value;
    return make_estimate(Scenario::TwoNodeFD, rate, 1.0 - cov);
}

OutageEstimate pi3_closed(double rate)
{
    check_rate(rate);
    const double root_t = std::sqrt(threshold_from_rate(rate, Scenario::ThreeNodeFD));
    return make_estimate(Scenario::ThreeNodeFD, rate,
                         1.0 - 1.0 / (1.0 + root_t * (std::atan(root_t) + pi / 2.0)));
}

OutageEstimate hd_closed(double rate)
{
    check_rate(rate);
    const double root_t = std::sqrt(threshold_from_rate(rate, Scenario::HalfDuplex));
    return make_estimate(Scenario::HalfDuplex, rate, 1.0 - 1.0 / (1.0 + root_t * std::atan(root_t)));
}

OutageEstimate outage(Scenario scenario, const NetworkParams& params, double rate,
                      const QuadratureConfig& quad)
{
    params.validate();
    if (!applicable(params))
        throw ConfigError("closed forms need alpha1 = alpha2 = 4, p_b = p_u and sigma_n2 = 0");
    OutageEstimate e;
    switch (scenario) {
    case Scenario::TwoNodeFD: e = pi2_closed(rate, params.lambda, params.sigma_l2, quad); break;
    case Scenario::ThreeNodeFD: e = pi3_closed(rate); break;
    case Scenario::HalfDuplex: e = hd_closed(rate); break;
    }
    e.params = params;
    return e;
}

}  // namespace fdoutage::closed_form
