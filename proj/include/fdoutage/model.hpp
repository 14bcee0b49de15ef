#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdoutage {

/// Raised for invalid parameters or configuration, before any computation starts.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Physical constants of the downlink model. Distances, powers and densities
/// are unitless but mutually consistent.
struct NetworkParams {
    double lambda = 1e-3;   ///< density of BSs and of users (same for both processes)
    double alpha1 = 4.0;    ///< path-loss exponent BS <-> user
    double alpha2 = 4.0;    ///< path-loss exponent user <-> user
    double p_b = 1.0;       ///< BS transmit power
    double p_u = 1.0;       ///< user transmit power
    double sigma_n2 = 0.0;  ///< noise power
    double sigma_l2 = 0.0;  ///< residual loop-interference gain E[|h_l|^2]
    double mu = 1.0;        ///< Rayleigh fading rate, mean power 1/mu

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    bool operator==(const NetworkParams&) const = default;
};

enum class Scenario { TwoNodeFD, ThreeNodeFD, HalfDuplex };

enum class Method { AnalyticGeneral, AnalyticClosedForm, MonteCarlo };

std::string_view to_string(Scenario s);
std::string_view to_string(Method m);
/// Accepts "two-node", "three-node", "half-duplex".
Scenario parse_scenario(std::string_view name);

struct OutageEstimate {
    double value = 0.0;
    Method method = Method::AnalyticGeneral;
    double std_error = 0.0;  ///< Monte Carlo standard error, 0 for analytic values
    Scenario scenario = Scenario::TwoNodeFD;
    double rate = 0.0;
    NetworkParams params{};
};

/// Linear SINR threshold for target rate `rate` (bits per channel use).
/// Full-duplex scenarios use 2^R - 1; half-duplex carries half the
/// instantaneous rate, so its threshold is 2^(2R) - 1.
double threshold_from_rate(double rate, Scenario scenario);

/// Nearest-BS distance density 2*pi*lambda*r*exp(-lambda*pi*r^2).
double nearest_bs_distance_pdf(double r, double lambda);

}  // namespace fdoutage
