#include "icluster/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "icluster/interpretability.hpp"

namespace icluster {

namespace {

constexpr std::size_t kOracleLimit = 12;

void check_guard(const Dataset& d, std::size_t k) {
  if (d.size() == 0 || d.size() > kOracleLimit)
    throw std::invalid_argument("oracle is limited to 1 <= n <= 12");
  if (k == 0) throw std::invalid_argument("k must be positive");
}

// Exact 1-center radius of every node subset, indexed by bitmask.
std::vector<double> all_radii(const Dataset& d, const Distances& dist) {
  const std::size_t n = d.size();
  std::vector<double> radius(std::size_t{1} << n, 0.0);
  for (std::size_t mask = 1; mask < radius.size(); ++mask) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < n; ++u) {
      if (!(mask >> u & 1)) continue;
      double r = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1)
          r = std::max(r, dist(static_cast<NodeId>(u), static_cast<NodeId>(v)));
      best = std::min(best, r);
    }
    radius[mask] = best;
  }
  return radius;
}

// Majority-value count of every node subset.
std::vector<std::size_t> all_majorities(const Dataset& d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> major(std::size_t{1} << n, 0);
  std::vector<std::size_t> count(d.foi_values().size());
  for (std::size_t mask = 1; mask < major.size(); ++mask) {
    std::fill(count.begin(), count.end(), 0);
    std::size_t best = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1)
        best = std::max(best, ++count[d.foi_value(static_cast<NodeId>(v))]);
    major[mask] = best;
  }
  return major;
}

// Calls fn(block_masks) for every partition of 0..n-1 into at most
// max_blocks non-empty blocks, in restricted-growth-string order.
template <typename Fn>
void for_each_partition(std::size_t n, std::size_t max_blocks, Fn&& fn) {
  std::vector<std::size_t> masks;
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == n) {
      fn(masks);
      return;
    }
    for (std::size_t b = 0; b < masks.size(); ++b) {
      masks[b] |= std::size_t{1} << v;
      self(self, v + 1);
      masks[b] &= ~(std::size_t{1} << v);
    }
    if (masks.size() < max_blocks) {
      masks.push_back(std::size_t{1} << v);
      self(self, v + 1);
      masks.pop_back();
    }
  };
  rec(rec, 0);
}

Clustering witness_from(const Dataset& d, const Distances& dist,
                        const std::vector<std::size_t>& masks, std::size_t k,
                        double objective) {
  Clustering c;
  c.k_requested = k;
  c.objective = objective;
  for (std::size_t mask : masks) {
    Cluster cl;
    for (std::size_t v = 0; v < d.size(); ++v)
      if (mask >> v & 1) cl.members.push_back(static_cast<NodeId>(v));
    // exact 1-center, lowest id on ties
    double best = std::numeric_limits<double>::infinity();
    for (NodeId u : cl.members) {
      double r = 0;
      for (NodeId v : cl.members) r = std::max(r, dist(u, v));
      if (r < best) {
        best = r;
        cl.center = u;
      }
    }
    c.clusters.push_back(std::move(cl));
  }
  validate_clustering(c, d.all_ids());
  return c;
}

OracleResult min_objective(const Dataset& d, const Distances& dist,
                           std::size_t k, double beta) {
  check_guard(d, k);
  const auto radius = all_radii(d, dist);
  const auto major = all_majorities(d);

  double best = std::numeric_limits<double>::infinity();
  double best_beta = 0;
  std::vector<std::size_t> best_masks;
  std::size_t feasible = 0;
  for_each_partition(d.size(), std::min(k, d.size()),
                     [&](const std::vector<std::size_t>& masks) {
                       double score = 1.0;
                       for (std::size_t m : masks)
                         score = std::min(
                             score, static_cast<double>(major[m]) /
                                        static_cast<double>(std::popcount(m)));
                       best_beta = std::max(best_beta, score);
                       if (score + 1e-12 < beta) return;
                       ++feasible;
                       double obj = 0;
                       for (std::size_t m : masks) obj = std::max(obj, radius[m]);
                       if (obj < best) {
                         best = obj;
                         best_masks = masks;
                       }
                     });
  if (best_masks.empty()) throw InfeasibleBetaError(beta, best_beta);

  OracleResult res;
  res.opt_objective = best;
  res.feasible_count = feasible;
  res.witness = witness_from(d, dist, best_masks, k, best);
  return res;
}

}  // namespace

OracleResult brute_force_kcenter_opt(const Dataset& d, const Distances& dist,
                                     std::size_t k) {
  return min_objective(d, dist, k, 0.0);
}

OracleResult brute_force_interpretable_opt(const Dataset& d,
                                           const Distances& dist,
                                           std::size_t k, double beta) {
  if (beta < 0 || beta > 1) throw std::invalid_argument("beta out of [0,1]");
  return min_objective(d, dist, k, beta);
}

double brute_force_beta_max(const Dataset& d, std::size_t k) {
  check_guard(d, k);
  const auto major = all_majorities(d);
  double best = 0;
  for_each_partition(d.size(), std::min(k, d.size()),
                     [&](const std::vector<std::size_t>& masks) {
                       double score = 1.0;
                       for (std::size_t m : masks)
                         score = std::min(
                             score, static_cast<double>(major[m]) /
                                        static_cast<double>(std::popcount(m)));
                       best = std::max(best, score);
                     });
  return best;
}

}  // namespace icluster
