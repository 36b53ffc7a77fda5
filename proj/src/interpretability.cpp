#include "icluster/interpretability.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace icluster {

double value_fraction(const Dataset& d, const std::vector<NodeId>& members,
                      FoiValueId f) {
  if (members.empty()) throw std::invalid_argument("empty cluster");
  std::size_t hits = 0;
  for (NodeId v : members)
    if (d.foi_value(v) == f) ++hits;
  return static_cast<double>(hits) / static_cast<double>(members.size());
}

ClusterScore cluster_score(const Dataset& d, const std::vector<NodeId>& members) {
  if (members.empty()) throw std::invalid_argument("empty cluster");
  std::vector<std::size_t> count(d.foi_values().size(), 0);
  for (NodeId v : members) ++count[d.foi_value(v)];
  FoiValueId best = 0;
  for (FoiValueId f = 1; f < count.size(); ++f) {
    if (count[f] > count[best]) {
      best = f;
    } else if (count[f] == count[best] &&
               d.foi(f).count > d.foi(best).count) {
      best = f;  // remaining tie falls through to the lower value id
    }
  }
  return {static_cast<double>(count[best]) / static_cast<double>(members.size()),
          best, count[best]};
}

InterpretabilityReport score_clustering(const Dataset& d, const Clustering& c) {
  InterpretabilityReport report;
  report.clustering_score = 1.0;
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    const ClusterScore s = cluster_score(d, c.clusters[i].members);
    report.per_cluster.push_back(
        {i, s.score, s.majority, s.majority_count, c.clusters[i].members.size()});
    report.clustering_score = std::min(report.clustering_score, s.score);
  }
  return report;
}

double beta_max_estimate(const Dataset& d, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const auto& values = d.foi_values();
  if (values.size() <= k) return 1.0;

  // Values in descending count order, ties by value id.
  std::vector<FoiValueId> order(values.size());
  std::iota(order.begin(), order.end(), FoiValueId{0});
  std::sort(order.begin(), order.end(), [&](FoiValueId a, FoiValueId b) {
    if (values[a].count != values[b].count)
      return values[a].count > values[b].count;
    return a < b;
  });

  struct Slot {
    std::size_t size = 0;
    std::size_t majority = 0;  // count of the most frequent value inside
    std::vector<std::size_t> count;
  };
  std::vector<Slot> slots(k);
  for (std::size_t i = 0; i < k; ++i) {
    slots[i].count.assign(values.size(), 0);
    const FoiValueId f = order[i];
    slots[i].size = slots[i].majority = slots[i].count[f] = values[f].count;
  }

  for (std::size_t i = k; i < order.size(); ++i) {
    const FoiValueId f = order[i];
    // Assignment is per node, in id order; nodes of one value are
    // interchangeable so only the count matters.
    for (std::size_t rep = 0; rep < values[f].count; ++rep) {
      std::size_t best = 0;
      double best_score = -1;
      for (std::size_t s = 0; s < k; ++s) {
        const std::size_t maj =
            std::max(slots[s].majority, slots[s].count[f] + 1);
        const double score =
            static_cast<double>(maj) / static_cast<double>(slots[s].size + 1);
        // On a score tie the larger cluster absorbs the node; a further tie
        // goes to the lower slot index.
        if (score > best_score ||
            (score == best_score && slots[s].size > slots[best].size)) {
          best_score = score;
          best = s;
        }
      }
      ++slots[best].size;
      ++slots[best].count[f];
      slots[best].majority = std::max(slots[best].majority, slots[best].count[f]);
    }
  }

  double worst = 1.0;
  for (const auto& s : slots)
    worst = std::min(worst, static_cast<double>(s.majority) /
                                static_cast<double>(s.size));
  return worst;
}

}  // namespace icluster
