#include "icluster/baselines.hpp"

#include <stdexcept>

namespace icluster {

Clustering kc_baseline(const Dataset& d, const Distances& dist, std::size_t k,
                       std::uint64_t seed, FirstCenter rule) {
  return greedy_kcenter(d, dist, d.all_ids(), k, seed, rule);
}

Clustering pf_baseline(const Dataset& d, const Distances& dist, std::size_t k,
                       std::uint64_t seed, FirstCenter rule) {
  const auto groups = foi_partition(d);
  const std::size_t m = groups.size();
  if (k < m)
    throw std::invalid_argument(
        "pf needs k >= |F| (one cluster per FoI value)");
  if (k > d.size()) throw std::invalid_argument("k exceeds node count");

  std::vector<std::size_t> share(m, 1);
  for (std::size_t extra = k - m; extra > 0; --extra) {
    std::size_t pick = m;
    double load = -1;
    for (std::size_t f = 0; f < m; ++f) {
      if (share[f] == groups[f].size()) continue;  // singletons already
      double l = static_cast<double>(groups[f].size()) /
                 static_cast<double>(share[f]);
      if (l > load) {
        load = l;
        pick = f;
      }
    }
    ++share[pick];
  }

  Clustering out;
  out.k_requested = k;
  for (std::size_t f = 0; f < m; ++f) {
    Clustering sub = greedy_kcenter(d, dist, groups[f], share[f],
                                    seed + f, rule);
    for (Cluster& c : sub.clusters) out.clusters.push_back(std::move(c));
  }
  out.objective = kcenter_objective(d, dist, out);
  validate_clustering(out, d.all_ids());
  return out;
}

Clustering kcf_baseline(const Dataset& d, const Distances& dist, std::size_t k,
                        std::uint64_t seed, FirstCenter rule) {
  Distances foi_dist(d, foi_only_metric());
  Clustering c = greedy_kcenter(d, foi_dist, d.all_ids(), k, seed, rule);
  c.objective = kcenter_objective(d, dist, c);
  return c;
}

}  // namespace icluster
