#pragma once

#include <vector>

#include "icluster/dataset.hpp"
#include "icluster/kcenter.hpp"

namespace icluster {

struct ClusterScore {
  double score = 0;            // I_F: fraction of the majority value
  FoiValueId majority = 0;     // argmax value
  std::size_t majority_count = 0;
};

struct InterpretabilityReport {
  struct PerCluster {
    std::size_t cluster_index = 0;
    double score = 0;
    FoiValueId majority = 0;
    std::size_t majority_count = 0;
    std::size_t size = 0;
  };
  std::vector<PerCluster> per_cluster;
  double clustering_score = 0;  // min over clusters of I_F
};

/// I_f: fraction of `members` whose FoI value is `f`.
double value_fraction(const Dataset& d, const std::vector<NodeId>& members,
                      FoiValueId f);

/// I_F with its argmax. Ties broken by globally more frequent FoI value,
/// then by the canonical value ordering.
ClusterScore cluster_score(const Dataset& d, const std::vector<NodeId>& members);

InterpretabilityReport score_clustering(const Dataset& d, const Clustering& c);

/// Estimate of the largest achievable clustering score for k clusters.
/// Returns exactly 1.0 when |F| <= k. Otherwise seeds k clusters with the
/// top-k FoI values by count and greedily assigns the remaining nodes
/// (values in descending count order, nodes in id order) to the cluster with
/// maximum score after insertion, preferring the larger cluster on ties.
/// The construction is feasible, so the result lower-bounds the true
/// maximum.
double beta_max_estimate(const Dataset& d, std::size_t k);

}  // namespace icluster
