#pragma once

#include <cstdint>
#include <vector>

#include "icluster/dataset.hpp"
#include "icluster/kcenter.hpp"
#include "icluster/metric.hpp"

namespace icluster {

/// All ways to assign a positive number of clusters to each of `num_values`
/// FoI values so the counts sum to k; ascending lexicographic order,
/// C(k-1, num_values-1) entries. Throws when num_values is 0 or exceeds k.
std::vector<std::vector<std::size_t>> enumerate_compositions(
    std::size_t num_values, std::size_t k);

/// Fully interpretable k-center clustering: every cluster holds a single FoI
/// value. Enumerates the compositions, solves a greedy k-center subproblem
/// per value, and returns the union with minimum objective (ties: first
/// composition in enumeration order). Compositions demanding more clusters
/// than a value has nodes are skipped. With seed_trials = 0 the subproblem
/// first centers are the lowest ids; otherwise each trial draws them from
/// `seed` and the best trial wins (lower trial on ties). Throws when
/// |F| > k or every composition is infeasible.
Clustering strong_interpretability(const Dataset& d, const Distances& dist,
                                   std::size_t k, std::uint64_t seed = 0,
                                   std::size_t seed_trials = 0);

}  // namespace icluster
