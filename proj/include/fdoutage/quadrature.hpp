#pragma once

#include <functional>
#include <stdexcept>

namespace fdoutage {

/// Tolerances and truncation rules for the nested semi-infinite integrals.
struct QuadratureConfig {
    double rel_tol_inner = 1e-9;
    double rel_tol_outer = 1e-7;
    /// Outer r-integral stops where exp(-lambda*pi*r^2) < tail_cut.
    double tail_cut = 1e-12;
    int max_subdivisions = 200;

    void validate() const;
};

/// Adaptive refinement ran out of subdivisions before meeting its tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double achieved_error, double requested_error, int subdivisions);

    double achieved_error() const noexcept { return achieved_; }
    double requested_error() const noexcept { return requested_; }
    int subdivisions() const noexcept { return subdivisions_; }

private:
    double achieved_;
    double requested_;
    int subdivisions_;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on the finite interval
/// [a, b]. The interval with the largest error estimate is bisected until
/// the summed estimate drops below max(rel_tol * |I|, abs_floor).
QuadratureResult integrate(const Integrand& f, double a, double b, double rel_tol,
                           int max_subdivisions, double abs_floor = 1e-300);

}  // namespace fdoutage
