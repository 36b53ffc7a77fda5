#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "icluster/dataset.hpp"
#include "icluster/kcenter.hpp"
#include "icluster/metric.hpp"

namespace icluster {

/// Exact reference solvers for tiny instances (n <= 12). They enumerate all
/// set partitions with at most k blocks, so they are for tests and sanity
/// checks, never for real data.
struct OracleResult {
  double opt_objective = 0;
  Clustering witness;             // first optimum in enumeration order
  std::size_t feasible_count = 0; // partitions meeting the feasibility rule
};

/// Raised when no <= k-part partition reaches the requested beta; carries
/// the best achievable value so callers can adjust.
struct InfeasibleBetaError : std::runtime_error {
  double requested;
  double beta_max;
  InfeasibleBetaError(double req, double bmax)
      : std::runtime_error("no clustering reaches beta " +
                           format_double(req) + "; maximum achievable is " +
                           format_double(bmax)),
        requested(req),
        beta_max(bmax) {}
};

/// Minimum k-center objective over every partition into at most k clusters,
/// each scored by its exact 1-center. Throws std::invalid_argument past the
/// n <= 12 guard.
OracleResult brute_force_kcenter_opt(const Dataset& d, const Distances& dist,
                                     std::size_t k);

/// Same minimum restricted to partitions whose interpretability score is at
/// least beta. beta = 0 degenerates to brute_force_kcenter_opt; beta = 1
/// gives the optimum over fully interpretable clusterings. Throws
/// InfeasibleBetaError when nothing qualifies.
OracleResult brute_force_interpretable_opt(const Dataset& d,
                                           const Distances& dist,
                                           std::size_t k, double beta);

/// Maximum interpretability score any <= k-part partition can reach.
double brute_force_beta_max(const Dataset& d, std::size_t k);

}  // namespace icluster
