#pragma once

#include <memory>
#include <string>
#include <vector>

#include "icluster/dataset.hpp"

namespace icluster {

enum class MetricKind {
  euclidean_all_features,
  euclidean_foi_only,
  precomputed_matrix,
};

/// Pairwise distance configuration. euclidean_all_features is weighted
/// Euclidean over normalized numeric columns with categorical disagreements
/// one-hot encoded (scaled by 1/sqrt(2), so one disagreement costs 1).
/// euclidean_foi_only compares only the discrete FoI assignments and is a
/// pseudometric: nodes sharing all FoI values are at distance 0.
struct DistanceMetric {
  MetricKind kind = MetricKind::euclidean_all_features;
  std::vector<double> weights;  // optional, per feature, non-negative
  std::shared_ptr<const std::vector<double>> matrix;  // row-major n*n
  std::size_t matrix_n = 0;
};

DistanceMetric euclidean_metric();
DistanceMetric foi_only_metric();
DistanceMetric precomputed_metric(std::vector<double> matrix, std::size_t n);

/// Reads an n x n matrix from a headerless CSV of n rows.
DistanceMetric load_matrix_csv(const std::string& path);

double distance(const DistanceMetric& m, const Dataset& d, NodeId u, NodeId v);

/// Metric bound to a dataset. Builds a full pairwise cache at construction
/// when n <= cache_limit; evaluation afterwards is pure and reentrant.
class Distances {
 public:
  Distances(const Dataset& d, DistanceMetric m, std::size_t cache_limit = 2048);

  double operator()(NodeId u, NodeId v) const {
    if (!cache_.empty()) return cache_[static_cast<std::size_t>(u) * n_ + v];
    return distance(metric_, *dataset_, u, v);
  }

  const Dataset& dataset() const { return *dataset_; }
  const DistanceMetric& config() const { return metric_; }

 private:
  const Dataset* dataset_;
  DistanceMetric metric_;
  std::size_t n_;
  std::vector<double> cache_;
};

struct MetricValidation {
  enum class Axiom { self_distance, non_negativity, symmetry, triangle, identity };
  struct Finding {
    Axiom axiom;
    NodeId u = 0, v = 0, w = 0;
    double lhs = 0, rhs = 0;
  };
  std::vector<Finding> violations;
  std::vector<Finding> warnings;  // identity-of-indiscernibles for foi_only
  bool exhaustive = false;
  std::size_t triples_checked = 0;

  bool ok() const { return violations.empty(); }
};

/// Checks the metric axioms. The triangle inequality is tested over all
/// triples when exhaustive is requested or n <= 200, and over seeded random
/// triples above that. Violations carry a witnessing tuple.
MetricValidation validate_metric(const DistanceMetric& m, const Dataset& d,
                                 bool exhaustive = false);

}  // namespace icluster
