#include "fdoutage/simulation.hpp"

#include "random_stream.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace fdoutage::sim {

namespace {

constexpr double pi = std::numbers::pi;

enum Purpose : std::uint64_t { BaseStations = 1, Users = 2, Exclusion = 3, LoopGain = 4 };

double path_gain(double d, double alpha)
{
    if (alpha == 4.0) {
        const double d2 = d * d;
        return 1.0 / (d2 * d2);
    }
    return std::pow(d, -alpha);
}

// Each PPP is drawn ring by ring: ring j spans radii [j, j+1) in units of
// 1/sqrt(lambda*pi), holds Poisson(2j+1) points and uses its own stream, so a
// larger window only appends points to a smaller one.
class RealizationSampler {
public:
    RealizationSampler(const NetworkParams& params, Scenario scenario, const SimConfig& sim)
        : params_(params), scenario_(scenario), sim_(sim),
          unit_(1.0 / std::sqrt(params.lambda * pi)),
          window_(sim.window_factor * unit_),
          rings_(static_cast<int>(std::ceil(sim.window_factor)))
    {
        ring_counts_.reserve(static_cast<std::size_t>(rings_));
        for (int j = 0; j < rings_; ++j) ring_counts_.emplace_back(2.0 * j + 1.0);
    }

    void sample(std::uint64_t trial, NetworkRealization& out) const
    {
        out.resamples = 0;
        for (;;) {
            draw_process(trial, BaseStations, static_cast<std::uint64_t>(out.resamples), 0.0,
                         out.bs_points, out.bs_fading);
            if (!out.bs_points.empty()) break;
            ++out.resamples;
        }

        out.serving_index = 0;
        for (std::size_t i = 1; i < out.bs_points.size(); ++i)
            if (out.bs_points[i].radius < out.bs_points[out.serving_index].radius) out.serving_index = i;
        out.serving_distance = out.bs_points[out.serving_index].radius;

        out.exclusion_radius = 0.0;
        if (scenario_ == Scenario::TwoNodeFD && sim_.mode == Mode::Matched) {
            detail::Xoshiro256 gen(detail::stream_key(sim_.seed, trial, Exclusion));
            out.exclusion_radius = unit_ * std::sqrt(detail::exponential(gen, 1.0));
        }

        if (scenario_ == Scenario::HalfDuplex) {
            out.user_points.clear();
            out.user_fading.clear();
        } else {
            draw_process(trial, Users, 0, out.exclusion_radius, out.user_points, out.user_fading);
        }

        out.li_gain = 0.0;
        if (scenario_ == Scenario::TwoNodeFD && params_.sigma_l2 > 0.0) {
            detail::Xoshiro256 gen(detail::stream_key(sim_.seed, trial, LoopGain));
            out.li_gain = detail::exponential(gen, 1.0 / params_.sigma_l2);
        }
    }

private:
    void draw_process(std::uint64_t trial, Purpose purpose, std::uint64_t attempt, double min_radius,
                      std::vector<PlanarPoint>& points, std::vector<double>& fading) const
    {
        points.clear();
        fading.clear();
        for (int j = 0; j < rings_; ++j) {
            const std::uint64_t sub = (attempt << 32) | static_cast<std::uint64_t>(j);
            detail::Xoshiro256 gen(detail::stream_key(sim_.seed, trial, purpose, sub));
            auto count_dist = ring_counts_[static_cast<std::size_t>(j)];
            const int count = count_dist(gen);
            const double jj = static_cast<double>(j);
            for (int n = 0; n < count; ++n) {
                const double radius = unit_ * std::sqrt(jj * jj + detail::uniform01(gen) * (2.0 * jj + 1.0));
                const double angle = 2.0 * pi * detail::uniform01(gen);
                const double gain = detail::exponential(gen, params_.mu);
                if (radius > window_ || radius < min_radius) continue;
                points.push_back({radius, angle});
                fading.push_back(gain);
            }
        }
    }

    NetworkParams params_;
    Scenario scenario_;
    SimConfig sim_;
    double unit_;
    double window_;
    int rings_;
    std::vector<std::poisson_distribution<int>> ring_counts_;
};

template <bool Parallel>
OutageEstimate estimate(const NetworkParams& params, Scenario scenario, double rate,
                        const SimConfig& sim)
{
    params.validate();
    sim.validate();
    const double threshold = threshold_from_rate(rate, scenario);
    const RealizationSampler sampler(params, scenario, sim);

    std::int64_t outages = 0;
    if constexpr (Parallel) {
#pragma omp parallel reduction(+ : outages)
        {
            NetworkRealization real;
#pragma omp for schedule(static)
            for (std::int64_t t = 0; t < sim.trials; ++t) {
                sampler.sample(static_cast<std::uint64_t>(t), real);
                if (sinr_of_realization(real, params, scenario) < threshold) ++outages;
            }
        }
    } else {
        NetworkRealization real;
        for (std::int64_t t = 0; t < sim.trials; ++t) {
            sampler.sample(static_cast<std::uint64_t>(t), real);
            if (sinr_of_realization(real, params, scenario) < threshold) ++outages;
        }
    }

    const double n = static_cast<double>(sim.trials);
    const double p = static_cast<double>(outages) / n;
    OutageEstimate e;
    e.value = p;
    e.std_error = std::sqrt(p * (1.0 - p) / n);
    e.method = Method::MonteCarlo;
    e.scenario = scenario;
    e.rate = rate;
    e.params = params;
    return e;
}

}  // namespace

std::string_view to_string(Mode m)
{
    return m == Mode::Matched ? "matched" : "physical";
}

Mode parse_mode(std::string_view name)
{
    if (name == "matched") return Mode::Matched;
    if (name == "physical") return Mode::Physical;
    throw ConfigError("unknown simulation mode '" + std::string(name) + "'");
}

void SimConfig::validate() const
{
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (!(window_factor >= 5.0) || !std::isfinite(window_factor))
        throw ConfigError("window_factor must be >= 5");
}

double window_radius(const NetworkParams& params, const SimConfig& sim)
{
    return sim.window_factor / std::sqrt(params.lambda * pi);
}

NetworkRealization sample_realization(const NetworkParams& params, Scenario scenario,
                                      const SimConfig& sim, std::uint64_t trial_index)
{
    params.validate();
    sim.validate();
    NetworkRealization real;
    RealizationSampler(params, scenario, sim).sample(trial_index, real);
    return real;
}

double sinr_of_realization(const NetworkRealization& real, const NetworkParams& params,
                           Scenario scenario)
{
    double bs_interference = 0.0;
    for (std::size_t i = 0; i < real.bs_points.size(); ++i) {
        if (i == real.serving_index) continue;
        bs_interference += real.bs_fading[i] * path_gain(real.bs_points[i].radius, params.alpha1);
    }
    double user_interference = 0.0;
    if (scenario != Scenario::HalfDuplex) {
        for (std::size_t j = 0; j < real.user_points.size(); ++j)
            user_interference += real.user_fading[j] * path_gain(real.user_points[j].radius, params.alpha2);
    }
    const double loop = scenario == Scenario::TwoNodeFD ? params.p_u * real.li_gain : 0.0;
    const double signal = params.p_b * real.serving_fading() * path_gain(real.serving_distance, params.alpha1);
    const double denominator =
        params.sigma_n2 + loop + params.p_b * bs_interference + params.p_u * user_interference;
    return signal / denominator;
}

OutageEstimate estimate_outage(const NetworkParams& params, Scenario scenario, double rate,
                               const SimConfig& sim)
{
    return estimate<true>(params, scenario, rate, sim);
}

OutageEstimate estimate_outage_serial(const NetworkParams& params, Scenario scenario, double rate,
                                      const SimConfig& sim)
{
    return estimate<false>(params, scenario, rate, sim);
}

}  // namespace fdoutage::sim
