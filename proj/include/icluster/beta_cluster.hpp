#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "icluster/dataset.hpp"
#include "icluster/kcenter.hpp"
#include "icluster/metric.hpp"

namespace icluster {

struct BetaRunConfig {
  double beta = 1.0;
  std::size_t max_iterations = 0;   // 0 -> 50*k
  std::size_t stall_threshold = 0;  // 0 -> 2*k
  std::uint64_t seed = 0;
  FirstCenter first_center = FirstCenter::seeded;
};

struct TracePoint {
  double interpretability = 0;  // clustering score after the iteration
  double objective = 0;         // o_kC after the iteration
};

struct BetaRunResult {
  Clustering clustering;
  double achieved_beta = 0;
  bool converged = false;  // achieved_beta >= requested beta
  std::size_t iterations = 0;
  std::vector<TracePoint> trace;  // entry 0 is the initial greedy clustering
  std::vector<std::string> warnings;
};

/// Post-processes a greedy k-center clustering until every cluster has at
/// least a `beta` fraction of one FoI value. Each iteration picks the
/// cluster with minimum score (ties: larger cluster, then lower index) and
/// either imports same-value nodes from the closest donor cluster
/// (boost_majority) or ejects the farthest minority nodes (reduce_minority).
/// After `stall_threshold` non-improving iterations the escape routine
/// boost_interpretability fires, at most once per distinct configuration.
/// Stops when the score reaches beta, nothing changes anymore, or
/// max_iterations is hit; the result may be a local maximum below beta.
BetaRunResult beta_interpretable_clustering(const Dataset& d,
                                            const Distances& dist,
                                            std::size_t k,
                                            const BetaRunConfig& cfg);

/// Merges the target cluster with the closest cluster holding nodes of the
/// given value (single linkage between the value's nodes on both sides),
/// then splits the merge back into two clusters seeded by its two most
/// frequent FoI values; the remainder is divided proportionally by size,
/// each node leaning to the seed whose 1-center is nearer. Cluster count is
/// unchanged and centers are recomputed.
Clustering boost_majority(const Dataset& d, const Distances& dist,
                          const Clustering& c, std::size_t target,
                          FoiValueId majority);

/// Ejects the gamma = ceil(|C| - |S|/beta) minority nodes farthest from the
/// 1-center of S and reassigns each to the nearest cluster whose score does
/// not drop; if none accepts, retries with the relaxed rule (score stays
/// >= beta), and otherwise the node stays put. Returns the clustering
/// unchanged when gamma <= 0.
Clustering reduce_minority(const Dataset& d, const Distances& dist,
                           const Clustering& c, std::size_t target,
                           const std::vector<NodeId>& majority_set,
                           double beta);

/// Escape routine for stalled runs: picks the most frequent top-k FoI value
/// that is majority nowhere, pulls all its nodes from the closest donor into
/// the least interpretable cluster and boosts that value there. Returns the
/// clustering unchanged when every top-k value already holds a majority or
/// no donor exists.
Clustering boost_interpretability(const Dataset& d, const Distances& dist,
                                  const Clustering& c, std::size_t k);

/// Exact 1-center of S: the node minimizing the maximum distance to the
/// rest of S, ties by lowest id.
NodeId find_center(const Dataset& d, const Distances& dist,
                   const std::vector<NodeId>& ids);

/// The min(gamma, |C\S|) nodes of C\S farthest from u, in descending
/// distance order, ties by lowest id.
std::vector<NodeId> identify_farthest(const Dataset& d, const Distances& dist,
                                      const std::vector<NodeId>& members,
                                      std::size_t gamma, NodeId u,
                                      const std::vector<NodeId>& majority_set);

/// gamma = ceil(cluster_size - majority_size/beta), snapped to the nearest
/// integer first so rational beta values do not drift across the ceiling.
/// May be <= 0, meaning the cluster already meets beta.
long minority_eject_count(std::size_t cluster_size, std::size_t majority_size,
                          double beta);

/// Largest-remainder split of `remainder` into parts proportional to the two
/// seed sizes; ties go to the larger seed, then to the first. The two counts
/// sum to `remainder`.
std::pair<std::size_t, std::size_t> remainder_split(std::size_t c1_size,
                                                    std::size_t c2_size,
                                                    std::size_t remainder);

}  // namespace icluster
