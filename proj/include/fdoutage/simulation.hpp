#pragma once

#include "fdoutage/model.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fdoutage::sim {

/// Matched reproduces the analytic construction (two-node uplink interferers
/// restricted to lie beyond a random rho drawn from the nearest-BS law).
/// Physical draws plain independent PPPs. The two coincide for three-node
/// and half-duplex.
enum class Mode { Matched, Physical };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view name);

struct SimConfig {
    std::int64_t trials = 100000;
    /// Window radius in units of 1/sqrt(lambda*pi); the window holds
    /// window_factor^2 points of each process on average.
    double window_factor = 24.0;
    std::uint64_t seed = 1;
    Mode mode = Mode::Matched;

    void validate() const;
};

/// A point in polar form around the typical user at the origin.
struct PlanarPoint {
    double radius = 0.0;
    double angle = 0.0;

    double x() const { return radius * std::cos(angle); }
    double y() const { return radius * std::sin(angle); }
};

struct NetworkRealization {
    std::vector<PlanarPoint> bs_points;
    std::vector<double> bs_fading;    ///< power fading of each BS link (h for the serving one, g_i otherwise)
    std::vector<PlanarPoint> user_points;
    std::vector<double> user_fading;  ///< k_j
    std::size_t serving_index = 0;
    double serving_distance = 0.0;
    double li_gain = 0.0;             ///< h_l, zero unless two-node with sigma_l2 > 0
    double exclusion_radius = 0.0;    ///< rho in matched two-node mode, 0 otherwise
    int resamples = 0;                ///< realizations redrawn because no BS fell in the window

    double serving_fading() const { return bs_fading[serving_index]; }
};

double window_radius(const NetworkParams& params, const SimConfig& sim);

/// Deterministic in (sim.seed, trial_index).
NetworkRealization sample_realization(const NetworkParams& params, Scenario scenario,
                                      const SimConfig& sim, std::uint64_t trial_index);

/// P_b h r^-alpha1 / (sigma_n2 + I_l + I_b + I_u).
double sinr_of_realization(const NetworkRealization& real, const NetworkParams& params,
                           Scenario scenario);

/// Fraction of trials in outage, trials spread over OpenMP threads. The
/// result does not depend on the thread count.
OutageEstimate estimate_outage(const NetworkParams& params, Scenario scenario, double rate,
                               const SimConfig& sim);

/// Single-threaded reference for estimate_outage.
OutageEstimate estimate_outage_serial(const NetworkParams& params, Scenario scenario, double rate,
                                      const SimConfig& sim);

}  // namespace fdoutage::sim
