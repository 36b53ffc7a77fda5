#include "icluster/strong_cluster.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace icluster {

namespace {

// One farthest-first traversal over `ids`. centers[i] is the i-th pick
// (first pick given by `first`), radii[s] the covering radius with the first
// s+1 centers, both exactly as greedy_kcenter would choose them.
struct Traversal {
  std::vector<NodeId> centers;
  std::vector<double> radii;
};

Traversal farthest_first(const Distances& dist, const std::vector<NodeId>& ids,
                         std::size_t max_centers, NodeId first) {
  Traversal t;
  std::vector<double> min_d(ids.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(ids.size(), false);
  std::size_t limit = std::min(max_centers, ids.size());
  NodeId next = first;
  for (std::size_t round = 0; round < limit; ++round) {
    t.centers.push_back(next);
    auto it = std::find(ids.begin(), ids.end(), next);
    chosen[static_cast<std::size_t>(it - ids.begin())] = true;
    double radius = 0;
    bool have_next = false;
    NodeId far_node = 0;
    double far_d = -1;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (!chosen[i]) min_d[i] = std::min(min_d[i], dist(ids[i], next));
      double md = chosen[i] ? 0.0 : min_d[i];
      radius = std::max(radius, md);
      if (!chosen[i] && md > far_d) {
        far_d = md;
        far_node = ids[i];
        have_next = true;
      }
    }
    t.radii.push_back(radius);
    if (!have_next) break;
    next = far_node;
  }
  return t;
}

}  // namespace

std::vector<std::vector<std::size_t>> enumerate_compositions(
    std::size_t num_values, std::size_t k) {
  if (num_values == 0 || num_values > k)
    throw std::invalid_argument("need 1 <= num_values <= k");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> parts;
  auto rec = [&](auto&& self, std::size_t left_parts, std::size_t left_sum) -> void {
    if (left_parts == 1) {
      parts.push_back(left_sum);
      out.push_back(parts);
      parts.pop_back();
      return;
    }
    for (std::size_t v = 1; v + (left_parts - 1) <= left_sum; ++v) {
      parts.push_back(v);
      self(self, left_parts - 1, left_sum - v);
      parts.pop_back();
    }
  };
  rec(rec, num_values, k);
  return out;
}

Clustering strong_interpretability(const Dataset& d, const Distances& dist,
                                   std::size_t k, std::uint64_t seed,
                                   std::size_t seed_trials) {
  const std::vector<std::vector<NodeId>> groups = foi_partition(d);
  const std::size_t m = groups.size();
  if (m > k)
    throw std::invalid_argument("more FoI values than clusters: |F| > k");

  const auto comps = enumerate_compositions(m, k);
  const std::size_t trials = seed_trials ? seed_trials : 1;
  std::mt19937_64 rng(seed);

  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<Traversal> best_trav;
  const std::vector<std::size_t>* best_comp = nullptr;

  for (std::size_t t = 0; t < trials; ++t) {
    // A part never exceeds k-(m-1); one traversal per value covers every
    // composition of this trial.
    std::vector<Traversal> trav(m);
    for (std::size_t f = 0; f < m; ++f) {
      NodeId first = groups[f].front();
      if (seed_trials) {
        std::uniform_int_distribution<std::size_t> pick(0, groups[f].size() - 1);
        first = groups[f][pick(rng)];
      }
      trav[f] = farthest_first(dist, groups[f], k - (m - 1), first);
    }
    for (const auto& comp : comps) {
      double obj = 0;
      bool feasible = true;
      for (std::size_t f = 0; f < m; ++f) {
        if (comp[f] > groups[f].size()) {
          feasible = false;
          break;
        }
        obj = std::max(obj, trav[f].radii[comp[f] - 1]);
      }
      if (feasible && obj < best_obj) {
        best_obj = obj;
        best_trav = trav;
        best_comp = &comp;
      }
    }
  }
  if (!best_comp)
    throw std::runtime_error("every composition needs more nodes than some value has");

  Clustering out;
  out.k_requested = k;
  for (std::size_t f = 0; f < m; ++f) {
    std::vector<NodeId> centers(best_trav[f].centers.begin(),
                                best_trav[f].centers.begin() +
                                    static_cast<std::ptrdiff_t>((*best_comp)[f]));
    Clustering sub = assign_to_centers(d, dist, centers, groups[f]);
    for (Cluster& c : sub.clusters) out.clusters.push_back(std::move(c));
  }
  out.objective = kcenter_objective(d, dist, out);
  validate_clustering(out, d.all_ids());
  return out;
}

}  // namespace icluster
