#include "fdoutage/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fdoutage::analytic {

namespace {

constexpr double pi = std::numbers::pi;

void check_inputs(const NetworkParams& params, const QuadratureConfig& quad)
{
    params.validate();
    quad.validate();
    if (params.mu != 1.0)
        throw ConfigError("analytic expressions assume unit fading rate (mu = 1)");
}

void check_point(double r, double threshold)
{
    if (!(r > 0.0)) throw ConfigError("serving distance must be > 0");
    if (!(threshold >= 0.0)) throw ConfigError("threshold must be >= 0");
}

// Substituting t = x/r turns the BS exponent into 2*pi*lambda*r^2 times
//   int_1^inf T t / (T + t^alpha) dt  =  int_0^1 T v^(alpha-3) / (T v^alpha + 1) dv   (t = 1/v).
// The integrand peaks near v = T^(-1/alpha), so the domain is split there.
double bs_shape_integral(double threshold, double alpha, double rel_tol, int max_sub)
{
    auto f = [=](double v) {
        return threshold * std::pow(v, alpha - 3.0) / (threshold * std::pow(v, alpha) + 1.0);
    };
    const double knee = std::pow(threshold, -1.0 / alpha);
    if (knee > 0.0 && knee < 1.0)
        return integrate(f, 0.0, knee, rel_tol, max_sub).value +
               integrate(f, knee, 1.0, rel_tol, max_sub).value;
    return integrate(f, 0.0, 1.0, rel_tol, max_sub).value;
}

// Uplink integrands scale out with y = c z, c^alpha2 = (P_u/P_b) T r^alpha1,
// leaving the universal kernel z / (1 + z^alpha2). UplinkKernel evaluates its
// tail integral G(a) = int_a^inf z / (1 + z^alpha2) dz on finite domains.
class UplinkKernel {
public:
    UplinkKernel(double alpha, double rel_tol, int max_sub)
        : alpha_(alpha), rel_tol_(rel_tol), max_sub_(max_sub)
    {
        full_ = head(1.0) + tail(1.0);
    }

    /// int_0^inf z / (1 + z^alpha) dz
    double full() const { return full_; }

    double from(double a) const
    {
        if (a <= 0.0) return full_;
        if (a <= 1.0) return full_ - head(a);
        return tail(a);
    }

private:
    // int_0^a z / (1 + z^alpha) dz for a <= 1
    double head(double a) const
    {
        const double alpha = alpha_;
        return integrate([=](double z) { return z / (1.0 + std::pow(z, alpha)); }, 0.0, a,
                         rel_tol_, max_sub_)
            .value;
    }

    // int_a^inf via z = 1/v, for a >= 1
    double tail(double a) const
    {
        const double alpha = alpha_;
        return integrate(
                   [=](double v) { return std::pow(v, alpha - 3.0) / (1.0 + std::pow(v, alpha)); },
                   0.0, 1.0 / a, rel_tol_, max_sub_)
            .value;
    }

    double alpha_;
    double rel_tol_;
    int max_sub_;
    double full_ = 0.0;
};

// lambda * pi * c^2 for the uplink scaling above.
double uplink_scale(double r, double threshold, const NetworkParams& p)
{
    const double c_pow = (p.p_u / p.p_b) * threshold * std::pow(r, p.alpha1);
    return p.lambda * pi * std::pow(c_pow, 2.0 / p.alpha2);
}

// With rho^2 = -ln(w) / (lambda*pi), the rho-average of the conditioned
// uplink transform becomes int_0^1 exp(-2 kappa G(sqrt(-ln w / kappa))) dw.
double conditioned_uplink(double kappa, const UplinkKernel& kernel, double rel_tol, int max_sub)
{
    if (kappa <= 0.0) return 1.0;
    auto f = [&](double w) {
        const double a = std::sqrt(-std::log(w) / kappa);
        return std::exp(-2.0 * kappa * kernel.from(a));
    };
    return integrate(f, 0.0, 1.0, rel_tol, max_sub).value;
}

enum class Uplink { None, Unconditioned, Conditioned };

// Coverage probability integrated over the serving distance in the variable
// u = lambda*pi*r^2, so that the nearest-BS law becomes exp(-u) du.
double coverage(const NetworkParams& p, double threshold, Uplink uplink, bool loop_interference,
                const QuadratureConfig& quad)
{
    const double bs_integral =
        bs_shape_integral(threshold, p.alpha1, quad.rel_tol_inner, quad.max_subdivisions);
    const UplinkKernel kernel(p.alpha2, quad.rel_tol_inner, quad.max_subdivisions);
    const double power_ratio = p.p_u / p.p_b;

    auto integrand = [&](double u) {
        const double r = std::sqrt(u / (p.lambda * pi));
        const double r_alpha = std::pow(r, p.alpha1);
        double value = std::exp(-u * (1.0 + 2.0 * bs_integral) -
                                threshold * r_alpha * p.sigma_n2 / p.p_b);
        if (loop_interference) value /= 1.0 + power_ratio * p.sigma_l2 * threshold * r_alpha;
        switch (uplink) {
        case Uplink::None: break;
        case Uplink::Unconditioned:
            value *= std::exp(-2.0 * uplink_scale(r, threshold, p) * kernel.full());
            break;
        case Uplink::Conditioned:
            value *= conditioned_uplink(uplink_scale(r, threshold, p), kernel,
                                        quad.rel_tol_inner, quad.max_subdivisions);
            break;
        }
        return value;
    };
    const double u_max = std::log(1.0 / quad.tail_cut);
    return integrate(integrand, 0.0, u_max, quad.rel_tol_outer, quad.max_subdivisions).value;
}

OutageEstimate make_estimate(Scenario s, const NetworkParams& p, double rate, double value)
{
    OutageEstimate e;
    e.value = std::clamp(value, 0.0, 1.0);
    e.method = Method::AnalyticGeneral;
    e.scenario = s;
    e.rate = rate;
    e.params = p;
    return e;
}

OutageEstimate outage_impl(Scenario s, const NetworkParams& p, double rate,
                           const QuadratureConfig& quad)
{
    check_inputs(p, quad);
    const double threshold = threshold_from_rate(rate, s);
    if (threshold == 0.0) return make_estimate(s, p, rate, 0.0);

    double cov = 0.0;
    switch (s) {
    case Scenario::TwoNodeFD: cov = coverage(p, threshold, Uplink::Conditioned, true, quad); break;
    case Scenario::ThreeNodeFD: cov = coverage(p, threshold, Uplink::Unconditioned, false, quad); break;
    case Scenario::HalfDuplex: cov = coverage(p, threshold, Uplink::None, false, quad); break;
    }
    return make_estimate(s, p, rate, 1.0 - cov);
}

}  // namespace

double laplace_ib(double r, double threshold, const NetworkParams& params,
                  const QuadratureConfig& quad)
{
    check_inputs(params, quad);
    check_point(r, threshold);
    if (threshold == 0.0) return 1.0;
    const double shape =
        bs_shape_integral(threshold, params.alpha1, quad.rel_tol_inner, quad.max_subdivisions);
    return std::exp(-2.0 * pi * params.lambda * r * r * shape);
}

double laplace_iu_three(double r, double threshold, const NetworkParams& params,
                        const QuadratureConfig& quad)
{
    check_inputs(params, quad);
    check_point(r, threshold);
    if (threshold == 0.0) return 1.0;
    const UplinkKernel kernel(params.alpha2, quad.rel_tol_inner, quad.max_subdivisions);
    return std::exp(-2.0 * uplink_scale(r, threshold, params) * kernel.full());
}

double laplace_iu_two(double r, double threshold, const NetworkParams& params,
                      const QuadratureConfig& quad)
{
    check_inputs(params, quad);
    check_point(r, threshold);
    if (threshold == 0.0) return 1.0;
    const UplinkKernel kernel(params.alpha2, quad.rel_tol_inner, quad.max_subdivisions);
    return conditioned_uplink(uplink_scale(r, threshold, params), kernel, quad.rel_tol_inner,
                              quad.max_subdivisions);
}

OutageEstimate outage_two_node(const NetworkParams& params, double rate, const QuadratureConfig& quad)
{
    return outage_impl(Scenario::TwoNodeFD, params, rate, quad);
}

OutageEstimate outage_three_node(const NetworkParams& params, double rate, const QuadratureConfig& quad)
{
    return outage_impl(Scenario::ThreeNodeFD, params, rate, quad);
}

OutageEstimate outage_half_duplex(const NetworkParams& params, double rate, const QuadratureConfig& quad)
{
    return outage_impl(Scenario::HalfDuplex, params, rate, quad);
}

OutageEstimate outage(Scenario scenario, const NetworkParams& params, double rate,
                      const QuadratureConfig& quad)
{
    return outage_impl(scenario, params, rate, quad);
}

}  // namespace fdoutage::analytic
