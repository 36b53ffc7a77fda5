#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "icluster/dataset.hpp"
#include "icluster/metric.hpp"

namespace icluster {

struct Cluster {
  NodeId center = 0;
  std::vector<NodeId> members;  // sorted ascending, contains center
};

/// Partition of a node set into at most k_requested non-empty clusters, each
/// with a designated center node. `objective` caches the k-center value
/// o_kC = max over nodes of the distance to their own cluster's center.
struct Clustering {
  std::vector<Cluster> clusters;
  std::size_t k_requested = 0;
  double objective = 0.0;
};

/// Throws std::logic_error when a clustering invariant is broken: members
/// must partition `ids` into 1..k_requested non-empty clusters and every
/// center must belong to its own cluster.
void validate_clustering(const Clustering& c, const std::vector<NodeId>& ids);

enum class FirstCenter {
  seeded,     // uniform over ids under the given seed
  lowest_id,  // deterministic, for oracle comparisons and enumeration
};

/// Farthest-first traversal (greedy k-center): after the first center, each
/// next center is the node maximizing the distance to its nearest chosen
/// center (ties: lowest id); every node is then assigned to its nearest
/// center. Objective is within 2x of the optimum over `ids`.
Clustering greedy_kcenter(const Dataset& d, const Distances& dist,
                          const std::vector<NodeId>& ids, std::size_t k,
                          std::uint64_t seed,
                          FirstCenter rule = FirstCenter::seeded);

/// o_kC of an arbitrary clustering: max over nodes of the distance to their
/// own cluster's center (members need not be nearest-center assigned).
double kcenter_objective(const Dataset& d, const Distances& dist,
                         const Clustering& c);

/// Nearest-center assignment of `ids` to the given centers. Each center is
/// pinned to its own cluster; other nodes break ties by lowest center index.
Clustering assign_to_centers(const Dataset& d, const Distances& dist,
                             const std::vector<NodeId>& centers,
                             const std::vector<NodeId>& ids);

/// Runs `runner` for every k' in 1..k and returns the candidate with minimum
/// objective (ties: lowest k'). A runner returns nullopt when k' is
/// infeasible for it or its interpretability contract is unmet; throws when
/// every k' is rejected.
Clustering best_of_k(
    const Dataset& d, const Distances& dist, std::size_t k,
    const std::function<std::optional<Clustering>(std::size_t)>& runner);

}  // namespace icluster
