#include "icluster/beta_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "icluster/interpretability.hpp"

namespace icluster {

namespace {

// Majority value of a member set under the global tie rules (count within
// the set, then global count, then lower value id).
ClusterScore member_score(const Dataset& d, const std::vector<NodeId>& members) {
  return cluster_score(d, members);
}

void recenter(const Dataset& d, const Distances& dist, Cluster& c) {
  c.center = find_center(d, dist, c.members);
}

void sort_members(Cluster& c) { std::sort(c.members.begin(), c.members.end()); }

double refresh_objective(const Dataset& d, const Distances& dist, Clustering& c) {
  c.objective = kcenter_objective(d, dist, c);
  return c.objective;
}

double single_linkage(const Distances& dist, const std::vector<NodeId>& a,
                      const std::vector<NodeId>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (NodeId u : a)
    for (NodeId v : b) best = std::min(best, dist(u, v));
  return best;
}

std::vector<NodeId> nodes_with_value(const Dataset& d,
                                     const std::vector<NodeId>& members,
                                     FoiValueId f) {
  std::vector<NodeId> out;
  for (NodeId v : members)
    if (d.foi_value(v) == f) out.push_back(v);
  return out;
}

// Membership sets in a representation independent of cluster order and of
// the stored centers; used for no-change detection and the fired-set.
std::vector<std::vector<NodeId>> signature(const Clustering& c) {
  std::vector<std::vector<NodeId>> sig;
  sig.reserve(c.clusters.size());
  for (const Cluster& cl : c.clusters) sig.push_back(cl.members);
  std::sort(sig.begin(), sig.end());
  return sig;
}

// Splits a merged cluster that holds a single FoI value: no second seed
// exists, so fall back to a plain geometric bisection around the two
// mutually farthest members.
void bisect_single_value(const Dataset& d, const Distances& dist,
                         const std::vector<NodeId>& merged, Cluster& a,
                         Cluster& b) {
  NodeId s1 = merged.front(), s2 = merged.back();
  double far = -1;
  for (std::size_t i = 0; i < merged.size(); ++i)
    for (std::size_t j = i + 1; j < merged.size(); ++j) {
      double dd = dist(merged[i], merged[j]);
      if (dd > far) {
        far = dd;
        s1 = merged[i];
        s2 = merged[j];
      }
    }
  a.members.clear();
  b.members.clear();
  for (NodeId v : merged) {
    if (v == s1) {
      a.members.push_back(v);
    } else if (v == s2) {
      b.members.push_back(v);
    } else if (dist(v, s1) <= dist(v, s2)) {
      a.members.push_back(v);
    } else {
      b.members.push_back(v);
    }
  }
  sort_members(a);
  sort_members(b);
  recenter(d, dist, a);
  recenter(d, dist, b);
}

// Shared body of boost_majority; `forced` pins the first seed value (used by
// the escape routine), otherwise the merge's own top value wins.
Clustering boost_majority_impl(const Dataset& d, const Distances& dist,
                               const Clustering& c, std::size_t target,
                               FoiValueId majority, bool forced) {
  if (target >= c.clusters.size()) throw std::invalid_argument("bad target");
  const Cluster& tc = c.clusters[target];
  std::vector<NodeId> own = nodes_with_value(d, tc.members, majority);
  const std::vector<NodeId>& link_src = own.empty() ? tc.members : own;

  std::size_t partner = c.clusters.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.clusters.size(); ++j) {
    if (j == target) continue;
    std::vector<NodeId> theirs = nodes_with_value(d, c.clusters[j].members, majority);
    if (theirs.empty()) continue;
    double link = single_linkage(dist, link_src, theirs);
    if (link < best) {
      best = link;
      partner = j;
    }
  }
  if (partner == c.clusters.size())
    throw std::invalid_argument("no cluster outside target holds the value");

  std::vector<NodeId> merged = tc.members;
  merged.insert(merged.end(), c.clusters[partner].members.begin(),
                c.clusters[partner].members.end());
  std::sort(merged.begin(), merged.end());

  // Two most frequent values of the merge (ties: global count, then id).
  std::vector<std::size_t> counts(d.foi_values().size(), 0);
  for (NodeId v : merged) ++counts[d.foi_value(v)];
  auto better = [&](FoiValueId x, FoiValueId y) {
    if (counts[x] != counts[y]) return counts[x] > counts[y];
    if (d.foi(x).count != d.foi(y).count)
      return d.foi(x).count > d.foi(y).count;
    return x < y;
  };
  FoiValueId top1 = majority;
  if (!forced || counts[majority] == 0) {
    bool have = false;
    for (FoiValueId f = 0; f < counts.size(); ++f) {
      if (counts[f] == 0) continue;
      if (!have || better(f, top1)) top1 = f, have = true;
    }
  }
  bool have2 = false;
  FoiValueId top2 = top1;
  for (FoiValueId f = 0; f < counts.size(); ++f) {
    if (counts[f] == 0 || f == top1) continue;
    if (!have2 || better(f, top2)) top2 = f, have2 = true;
  }

  Clustering out = c;
  Cluster& a = out.clusters[target];
  Cluster& b = out.clusters[partner];
  if (!have2) {
    bisect_single_value(d, dist, merged, a, b);
    refresh_objective(d, dist, out);
    return out;
  }

  a.members = nodes_with_value(d, merged, top1);
  b.members = nodes_with_value(d, merged, top2);
  std::vector<NodeId> rest;
  for (NodeId v : merged)
    if (d.foi_value(v) != top1 && d.foi_value(v) != top2) rest.push_back(v);

  auto [take1, take2] = remainder_split(a.members.size(), b.members.size(), rest.size());
  (void)take2;
  NodeId u1 = find_center(d, dist, a.members);
  NodeId u2 = find_center(d, dist, b.members);
  std::stable_sort(rest.begin(), rest.end(), [&](NodeId x, NodeId y) {
    double lx = dist(x, u1) - dist(x, u2);
    double ly = dist(y, u1) - dist(y, u2);
    if (lx != ly) return lx < ly;
    return x < y;
  });
  for (std::size_t i = 0; i < rest.size(); ++i)
    (i < take1 ? a : b).members.push_back(rest[i]);
  sort_members(a);
  sort_members(b);
  recenter(d, dist, a);
  recenter(d, dist, b);
  refresh_objective(d, dist, out);
  return out;
}

// Re-seed an emptied cluster with the node farthest from all remaining
// centers, taken from some cluster that can spare one; drops the cluster
// when every other cluster is a singleton.
void repair_empty(const Dataset& d, const Distances& dist, Clustering& c,
                  std::size_t empty_idx) {
  std::vector<NodeId> centers;
  for (std::size_t j = 0; j < c.clusters.size(); ++j)
    if (j != empty_idx && !c.clusters[j].members.empty())
      centers.push_back(c.clusters[j].center);

  std::size_t from = c.clusters.size();
  NodeId pick = 0;
  double far = -1;
  for (std::size_t j = 0; j < c.clusters.size(); ++j) {
    if (j == empty_idx || c.clusters[j].members.size() < 2) continue;
    for (NodeId v : c.clusters[j].members) {
      double nearest = std::numeric_limits<double>::infinity();
      for (NodeId u : centers) nearest = std::min(nearest, dist(v, u));
      if (nearest > far) {
        far = nearest;
        pick = v;
        from = j;
      }
    }
  }
  if (from == c.clusters.size()) {
    c.clusters.erase(c.clusters.begin() + static_cast<std::ptrdiff_t>(empty_idx));
    return;
  }
  Cluster& donor = c.clusters[from];
  donor.members.erase(std::find(donor.members.begin(), donor.members.end(), pick));
  if (donor.center == pick) recenter(d, dist, donor);
  c.clusters[empty_idx].members = {pick};
  c.clusters[empty_idx].center = pick;
}

}  // namespace

std::pair<std::size_t, std::size_t> remainder_split(std::size_t c1_size,
                                                    std::size_t c2_size,
                                                    std::size_t remainder) {
  std::size_t theta = c1_size + c2_size;
  if (theta == 0) throw std::invalid_argument("both seed clusters empty");
  std::size_t f1 = c1_size * remainder / theta;
  std::size_t f2 = c2_size * remainder / theta;
  std::size_t r1 = c1_size * remainder % theta;
  std::size_t r2 = c2_size * remainder % theta;
  std::size_t left = remainder - f1 - f2;  // 0 or 1
  if (left) {
    bool to_first = r1 > r2 || (r1 == r2 && c1_size >= c2_size);
    (to_first ? f1 : f2) += 1;
  }
  return {f1, f2};
}

long minority_eject_count(std::size_t cluster_size, std::size_t majority_size,
                          double beta) {
  if (beta <= 0) return 0;
  double t = static_cast<double>(cluster_size) -
             static_cast<double>(majority_size) / beta;
  double snapped = std::round(t);
  if (std::abs(t - snapped) < 1e-9) return static_cast<long>(snapped);
  return static_cast<long>(std::ceil(t));
}

NodeId find_center(const Dataset& d, const Distances& dist,
                   const std::vector<NodeId>& ids) {
  (void)d;
  if (ids.empty()) throw std::invalid_argument("find_center of empty set");
  NodeId best = ids.front();
  double best_r = std::numeric_limits<double>::infinity();
  for (NodeId u : ids) {
    double r = 0;
    for (NodeId v : ids) r = std::max(r, dist(u, v));
    if (r < best_r || (r == best_r && u < best)) {
      best_r = r;
      best = u;
    }
  }
  return best;
}

std::vector<NodeId> identify_farthest(const Dataset& d, const Distances& dist,
                                      const std::vector<NodeId>& members,
                                      std::size_t gamma, NodeId u,
                                      const std::vector<NodeId>& majority_set) {
  (void)d;
  std::vector<NodeId> pool;
  for (NodeId v : members)
    if (!std::binary_search(majority_set.begin(), majority_set.end(), v))
      pool.push_back(v);
  std::stable_sort(pool.begin(), pool.end(), [&](NodeId x, NodeId y) {
    double dx = dist(x, u), dy = dist(y, u);
    if (dx != dy) return dx > dy;
    return x < y;
  });
  if (pool.size() > gamma) pool.resize(gamma);
  return pool;
}

Clustering boost_majority(const Dataset& d, const Distances& dist,
                          const Clustering& c, std::size_t target,
                          FoiValueId majority) {
  return boost_majority_impl(d, dist, c, target, majority, false);
}

Clustering reduce_minority(const Dataset& d, const Distances& dist,
                           const Clustering& c, std::size_t target,
                           const std::vector<NodeId>& majority_set,
                           double beta) {
  if (target >= c.clusters.size()) throw std::invalid_argument("bad target");
  const Cluster& tc = c.clusters[target];
  long gamma_l = minority_eject_count(tc.members.size(), majority_set.size(), beta);
  if (gamma_l <= 0) return c;
  std::size_t gamma = static_cast<std::size_t>(gamma_l);

  std::vector<NodeId> sorted_majority = majority_set;
  std::sort(sorted_majority.begin(), sorted_majority.end());
  NodeId u = find_center(d, dist, sorted_majority);
  std::vector<NodeId> eject =
      identify_farthest(d, dist, tc.members, gamma, u, sorted_majority);

  Clustering out = c;
  Cluster& from = out.clusters[target];
  for (NodeId v : eject)
    from.members.erase(std::find(from.members.begin(), from.members.end(), v));

  for (NodeId v : eject) {
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < out.clusters.size(); ++j)
      if (j != target) order.push_back(j);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      double dx = dist(v, out.clusters[x].center);
      double dy = dist(v, out.clusters[y].center);
      if (dx != dy) return dx < dy;
      return x < y;
    });

    auto place = [&](std::size_t j) {
      Cluster& to = out.clusters[j];
      to.members.insert(
          std::upper_bound(to.members.begin(), to.members.end(), v), v);
      recenter(d, dist, to);
    };
    bool placed = false;
    for (std::size_t j : order) {
      const Cluster& to = out.clusters[j];
      double before = member_score(d, to.members).score;
      std::vector<NodeId> grown = to.members;
      grown.push_back(v);
      if (member_score(d, grown).score >= before) {
        place(j);
        placed = true;
        break;
      }
    }
    if (!placed) {
      // Relaxed rule: any host that stays at or above beta will do.
      for (std::size_t j : order) {
        std::vector<NodeId> grown = out.clusters[j].members;
        grown.push_back(v);
        if (member_score(d, grown).score >= beta) {
          place(j);
          placed = true;
          break;
        }
      }
    }
    if (!placed)
      from.members.insert(
          std::upper_bound(from.members.begin(), from.members.end(), v), v);
  }

  recenter(d, dist, from);
  refresh_objective(d, dist, out);
  return out;
}

Clustering boost_interpretability(const Dataset& d, const Distances& dist,
                                  const Clustering& c, std::size_t k) {
  std::vector<bool> is_majority(d.foi_values().size(), false);
  for (const Cluster& cl : c.clusters)
    is_majority[member_score(d, cl.members).majority] = true;

  std::vector<FoiValueId> by_count(d.foi_values().size());
  for (FoiValueId f = 0; f < by_count.size(); ++f) by_count[f] = f;
  std::stable_sort(by_count.begin(), by_count.end(), [&](FoiValueId x, FoiValueId y) {
    if (d.foi(x).count != d.foi(y).count)
      return d.foi(x).count > d.foi(y).count;
    return x < y;
  });
  if (by_count.size() > k) by_count.resize(k);

  // Least interpretable cluster; ties prefer the larger, then lower index.
  std::size_t target = 0;
  {
    double worst = 2.0;
    for (std::size_t j = 0; j < c.clusters.size(); ++j) {
      double s = member_score(d, c.clusters[j].members).score;
      if (s < worst ||
          (s == worst &&
           c.clusters[j].members.size() > c.clusters[target].members.size())) {
        worst = s;
        target = j;
      }
    }
  }

  for (FoiValueId f : by_count) {
    if (is_majority[f]) continue;
    std::vector<NodeId> own = nodes_with_value(d, c.clusters[target].members, f);
    std::size_t donor = c.clusters.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.clusters.size(); ++j) {
      if (j == target) continue;
      std::vector<NodeId> theirs = nodes_with_value(d, c.clusters[j].members, f);
      if (theirs.empty()) continue;
      double link = single_linkage(dist, c.clusters[target].members, theirs);
      if (link < best) {
        best = link;
        donor = j;
      }
    }
    if (donor == c.clusters.size()) continue;

    Clustering out = c;
    std::size_t tgt = target;
    {
      Cluster& to = out.clusters[tgt];
      Cluster& fr = out.clusters[donor];
      std::vector<NodeId> moved = nodes_with_value(d, fr.members, f);
      for (NodeId v : moved)
        fr.members.erase(std::find(fr.members.begin(), fr.members.end(), v));
      to.members.insert(to.members.end(), moved.begin(), moved.end());
      sort_members(to);
      recenter(d, dist, to);
    }
    if (out.clusters[donor].members.empty()) {
      repair_empty(d, dist, out, donor);  // may drop the donor slot entirely
      if (out.clusters.size() < c.clusters.size() && tgt > donor) --tgt;
    } else {
      recenter(d, dist, out.clusters[donor]);
    }
    refresh_objective(d, dist, out);

    // Keep pulling: if more f nodes live elsewhere, run the boost step with
    // the seed value pinned to f.
    std::size_t outside = 0;
    for (std::size_t j = 0; j < out.clusters.size(); ++j)
      if (j != tgt)
        outside += nodes_with_value(d, out.clusters[j].members, f).size();
    if (outside > 0) return boost_majority_impl(d, dist, out, tgt, f, true);
    return out;
  }
  return c;
}

BetaRunResult beta_interpretable_clustering(const Dataset& d,
                                            const Distances& dist,
                                            std::size_t k,
                                            const BetaRunConfig& cfg) {
  if (k == 0 || k > d.size()) throw std::invalid_argument("k out of range");
  if (cfg.beta < 0 || cfg.beta > 1) throw std::invalid_argument("beta out of [0,1]");
  const std::size_t max_iter =
      cfg.max_iterations ? cfg.max_iterations : 50 * k;
  const std::size_t stall_cap =
      cfg.stall_threshold ? cfg.stall_threshold : 2 * k;

  BetaRunResult res;
  res.clustering =
      greedy_kcenter(d, dist, d.all_ids(), k, cfg.seed, cfg.first_center);

  double bm = beta_max_estimate(d, k);
  if (cfg.beta > bm + 1e-12) {
    res.warnings.push_back("requested beta " + format_double(cfg.beta) +
                           " exceeds the estimated maximum " +
                           format_double(bm) + " for k=" + std::to_string(k));
  }

  InterpretabilityReport rep = score_clustering(d, res.clustering);
  res.trace.push_back({rep.clustering_score, res.clustering.objective});
  double best_seen = rep.clustering_score;
  std::size_t stall = 0;
  std::set<std::vector<std::vector<NodeId>>> boosted;

  while (rep.clustering_score < cfg.beta && res.iterations < max_iter) {
    // Worst cluster; ties prefer the larger one, then the lower index.
    std::size_t target = 0;
    for (std::size_t j = 1; j < rep.per_cluster.size(); ++j) {
      const auto& a = rep.per_cluster[j];
      const auto& b = rep.per_cluster[target];
      if (a.score < b.score || (a.score == b.score && a.size > b.size))
        target = j;
    }
    FoiValueId majority = rep.per_cluster[target].majority;
    std::vector<NodeId> inside =
        nodes_with_value(d, res.clustering.clusters[target].members, majority);
    bool outside = d.foi(majority).count > inside.size();

    auto before = signature(res.clustering);
    res.clustering =
        outside ? boost_majority(d, dist, res.clustering, target, majority)
                : reduce_minority(d, dist, res.clustering, target, inside,
                                  cfg.beta);
    ++res.iterations;
    rep = score_clustering(d, res.clustering);
    res.trace.push_back({rep.clustering_score, res.clustering.objective});
    bool changed = signature(res.clustering) != before;
    if (rep.clustering_score > best_seen) {
      best_seen = rep.clustering_score;
      stall = 0;
    } else {
      ++stall;
    }
    if (rep.clustering_score >= cfg.beta) break;

    if (stall >= stall_cap) {
      auto sig = signature(res.clustering);
      if (boosted.insert(sig).second) {
        Clustering kicked =
            boost_interpretability(d, dist, res.clustering, k);
        bool kick_changed = signature(kicked) != sig;
        if (kick_changed) {
          res.clustering = std::move(kicked);
          rep = score_clustering(d, res.clustering);
          res.trace.push_back({rep.clustering_score, res.clustering.objective});
          if (rep.clustering_score > best_seen) best_seen = rep.clustering_score;
        }
        stall = 0;
        if (!kick_changed && !changed) break;
      } else if (!changed) {
        break;  // stuck on a configuration the escape already visited
      }
    } else if (!changed && stall == 0) {
      break;  // defensive: cannot happen, a no-op never improves the score
    }
  }

  res.achieved_beta = rep.clustering_score;
  res.converged = res.achieved_beta >= cfg.beta;
  return res;
}

}  // namespace icluster
