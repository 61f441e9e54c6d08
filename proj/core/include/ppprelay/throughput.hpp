#pragma once

#include <optional>

#include "ppprelay/channel.hpp"
#include "ppprelay/geometry.hpp"
#include "ppprelay/quadrature.hpp"

namespace ppprelay {

/// Average number of decoded subcarriers per transmission under bulk
/// selection, K (1 - outage), for real K > 0. Uses params for everything
/// except the subcarrier count.
double throughput(double subcarriers, const SystemParams& params, const Region& region,
                  double density, const QuadratureSettings& q = {});

struct OptimizationResult {
  double k_relaxed = 0.0;  ///< maximizer of the relaxed problem
  int k_opt = 0;           ///< integer choice; 0 when infeasible
  double kappa_opt = 0.0;  ///< throughput at k_opt
  bool feasible = true;
  std::optional<double> constraint;  ///< outage ceiling, if any
};

/// Maximizes throughput over real K by golden section (bracket doubled from
/// K = 2), then rounds to whichever neighbouring integer is better.
OptimizationResult optimize_k_unconstrained(const SystemParams& params, const Region& region,
                                            double density, const QuadratureSettings& q = {});

/// Same subject to outage(K) <= psi, with the integer taken as the floor of
/// the relaxed optimum (and at least 1). Infeasible when even K = 1 violates
/// psi, or psi is below the outage floor of a disc.
OptimizationResult optimize_k_constrained(const SystemParams& params, const Region& region,
                                          double density, double psi,
                                          const QuadratureSettings& q = {});

/// Density below which no K >= 1 meets the outage ceiling psi.
double cutoff_density(double psi, const SystemParams& params, const Region& region,
                      const QuadratureSettings& q = {});

/// alpha = 2 approximation -2 s ln(psi) / (pi P_t exp(-r_SD^2 s / (2 P_t))).
double cutoff_density_freespace(double psi, const SystemParams& params);

}  // namespace ppprelay
