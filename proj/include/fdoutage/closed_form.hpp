#pragma once

#include "fdoutage/model.hpp"
#include "fdoutage/quadrature.hpp"

#include <cmath>

// Special case alpha1 = alpha2 = 4, P_b = P_u, sigma_n2 = 0. The substitutions
// u = r^2 and v = rho^2 reduce the general expressions to the forms below.
namespace fdoutage::closed_form {

/// True when `params` satisfy the special-case assumptions.
bool applicable(const NetworkParams& params);

/// exp(-pi*lambda*u*(1 + sqrt(T)*atan(sqrt(T))))
double f_u(double u, double rate, double lambda);

/// int_0^inf exp(-pi*lambda*(v + u*sqrt(T)*arccot(v / (u*sqrt(T))))) dv
double f_uv(double u, double rate, double lambda, const QuadratureConfig& quad = {});

/// Two-node outage 1 - (pi*lambda)^2 int_0^inf f_u f_uv / (1 + sigma_l2 T u^2) du.
OutageEstimate pi2_closed(double rate, double lambda, double sigma_l2,
                          const QuadratureConfig& quad = {});

/// Three-node outage 1 - 1/(1 + sqrt(T)(atan(sqrt(T)) + pi/2)); independent of lambda.
OutageEstimate pi3_closed(double rate);

/// Half-duplex outage 1 - 1/(1 + sqrt(T') atan(sqrt(T'))), T' = 2^(2R) - 1.
OutageEstimate hd_closed(double rate);

/// Dispatches on scenario; throws ConfigError when `applicable(params)` is false.
OutageEstimate outage(Scenario scenario, const NetworkParams& params, double rate,
                      const QuadratureConfig& quad = {});

/// arccot on [0, inf): pi/2 - atan(x).
inline double arccot(double x) { return 1.5707963267948966 - std::atan(x); }

}  // namespace fdoutage::closed_form
