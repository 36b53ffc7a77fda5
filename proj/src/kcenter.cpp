#include "icluster/kcenter.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace icluster {

void validate_clustering(const Clustering& c, const std::vector<NodeId>& ids) {
  if (c.clusters.empty()) throw std::logic_error("clustering has no clusters");
  if (c.clusters.size() > c.k_requested)
    throw std::logic_error("more clusters than k_requested");
  std::set<NodeId> seen;
  for (const auto& cl : c.clusters) {
    if (cl.members.empty()) throw std::logic_error("empty cluster");
    if (!std::is_sorted(cl.members.begin(), cl.members.end()))
      throw std::logic_error("cluster members not sorted");
    if (!std::binary_search(cl.members.begin(), cl.members.end(), cl.center))
      throw std::logic_error("center " + std::to_string(cl.center) +
                             " not a member of its cluster");
    for (NodeId v : cl.members)
      if (!seen.insert(v).second)
        throw std::logic_error("node " + std::to_string(v) +
                               " in more than one cluster");
  }
  if (seen.size() != ids.size() ||
      !std::equal(seen.begin(), seen.end(), ids.begin()))
    throw std::logic_error("cluster members do not cover the node set");
}

Clustering assign_to_centers(const Dataset& d, const Distances& dist,
                             const std::vector<NodeId>& centers,
                             const std::vector<NodeId>& ids) {
  if (centers.empty()) throw std::invalid_argument("empty centers");
  Clustering c;
  c.k_requested = centers.size();
  c.clusters.resize(centers.size());
  std::set<NodeId> center_set(centers.begin(), centers.end());
  if (center_set.size() != centers.size())
    throw std::invalid_argument("duplicate centers");
  for (std::size_t i = 0; i < centers.size(); ++i)
    c.clusters[i].center = centers[i];

  double worst = 0;
  for (NodeId v : ids) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    if (center_set.count(v)) {
      // A center always lives in its own cluster, even when another center
      // sits at distance 0.
      best = static_cast<std::size_t>(
          std::find(centers.begin(), centers.end(), v) - centers.begin());
      best_d = 0;
    } else {
      for (std::size_t i = 0; i < centers.size(); ++i) {
        const double x = dist(v, centers[i]);
        if (x < best_d) {
          best_d = x;
          best = i;
        }
      }
    }
    c.clusters[best].members.push_back(v);
    worst = std::max(worst, best_d);
  }
  for (auto& cl : c.clusters) std::sort(cl.members.begin(), cl.members.end());
  c.objective = worst;
  return c;
}

Clustering greedy_kcenter(const Dataset& d, const Distances& dist,
                          const std::vector<NodeId>& ids, std::size_t k,
                          std::uint64_t seed, FirstCenter rule) {
  if (ids.empty()) throw std::invalid_argument("empty node set");
  if (k < 1 || k > ids.size())
    throw std::invalid_argument("k must be in 1..|ids|");

  std::vector<NodeId> centers;
  centers.reserve(k);
  if (rule == FirstCenter::lowest_id) {
    centers.push_back(*std::min_element(ids.begin(), ids.end()));
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    centers.push_back(ids[pick(rng)]);
  }

  std::vector<double> nearest(ids.size());
  std::vector<char> chosen(ids.size(), 0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    nearest[i] = dist(ids[i], centers[0]);
    if (ids[i] == centers[0]) chosen[i] = 1;
  }

  while (centers.size() < k) {
    // Next center: unchosen node farthest from its nearest center, ties by
    // lowest id. Skipping chosen nodes matters when points coincide.
    std::size_t far = ids.size();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (chosen[i]) continue;
      if (far == ids.size() || nearest[i] > nearest[far] ||
          (nearest[i] == nearest[far] && ids[i] < ids[far]))
        far = i;
    }
    centers.push_back(ids[far]);
    chosen[far] = 1;
    for (std::size_t i = 0; i < ids.size(); ++i)
      nearest[i] = std::min(nearest[i], dist(ids[i], centers.back()));
  }

  Clustering c = assign_to_centers(d, dist, centers, ids);
  c.k_requested = k;
  return c;
}

double kcenter_objective(const Dataset& d, const Distances& dist,
                         const Clustering& c) {
  double worst = 0;
  for (const auto& cl : c.clusters)
    for (NodeId v : cl.members) worst = std::max(worst, dist(v, cl.center));
  return worst;
}

Clustering best_of_k(
    const Dataset& d, const Distances& dist, std::size_t k,
    const std::function<std::optional<Clustering>(std::size_t)>& runner) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::optional<Clustering> best;
  for (std::size_t kp = 1; kp <= k; ++kp) {
    auto cand = runner(kp);
    if (cand && (!best || cand->objective < best->objective)) best = cand;
  }
  if (!best) throw std::runtime_error("no k' in 1..k produced a clustering");
  return *best;
}

}  // namespace icluster
