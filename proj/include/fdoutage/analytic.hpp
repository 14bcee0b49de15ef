#pragma once

#include "fdoutage/model.hpp"
#include "fdoutage/quadrature.hpp"

namespace fdoutage::analytic {

// Laplace transforms of the interference seen by the typical downlink user at
// distance r from its serving BS, evaluated at s = T r^alpha1 / P_b. Every
// semi-infinite integral is mapped onto a finite domain before quadrature.
//
// The analytic path takes the fading rate to be 1; an explicit mu != 1 is
// rejected with ConfigError (mu is only consumed by the simulator).

/// Interference from the other BSs, which all lie beyond r.
double laplace_ib(double r, double threshold, const NetworkParams& params,
                  const QuadratureConfig& quad = {});

/// Uplink interference from an unconditioned user PPP (three-node architecture).
double laplace_iu_three(double r, double threshold, const NetworkParams& params,
                        const QuadratureConfig& quad = {});

/// Uplink interference averaged over the distance rho to the nearest
/// interfering uplink user (two-node architecture); interferers are a PPP
/// outside the disk of radius rho, and rho follows the nearest-BS law.
double laplace_iu_two(double r, double threshold, const NetworkParams& params,
                      const QuadratureConfig& quad = {});

OutageEstimate outage_two_node(const NetworkParams& params, double rate,
                               const QuadratureConfig& quad = {});
OutageEstimate outage_three_node(const NetworkParams& params, double rate,
                                 const QuadratureConfig& quad = {});
/// Half-duplex baseline: three-node model without uplink interference and a
/// doubled-rate threshold.
OutageEstimate outage_half_duplex(const NetworkParams& params, double rate,
                                  const QuadratureConfig& quad = {});

OutageEstimate outage(Scenario scenario, const NetworkParams& params, double rate,
                      const QuadratureConfig& quad = {});

}  // namespace fdoutage::analytic
