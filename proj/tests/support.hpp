#pragma once

// Shared fixtures for the unit tests: tiny hand-built datasets with
// controlled geometry (precomputed distances) so expected values stay exact.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "icluster/dataset.hpp"
#include "icluster/kcenter.hpp"
#include "icluster/metric.hpp"

namespace support {

// Dataset with a single categorical column doubling as the FoI; pair it with
// a precomputed metric so labels and geometry stay independent.
inline icluster::Dataset labeled(const std::vector<std::string>& labels) {
  icluster::FeatureSchema s;
  s.features = {{"foi", icluster::FeatureKind::categorical}};
  s.foi_indices = {0};
  std::vector<std::vector<std::string>> rows;
  rows.reserve(labels.size());
  for (const auto& l : labels) rows.push_back({l});
  return icluster::Dataset::from_rows(s, rows);
}

inline icluster::DistanceMetric line_metric(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = std::abs(xs[i] - xs[j]);
  return icluster::precomputed_metric(std::move(m), n);
}

inline icluster::DistanceMetric plane_metric(
    const std::vector<std::pair<double, double>>& pts) {
  const std::size_t n = pts.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = std::hypot(pts[i].first - pts[j].first,
                                pts[i].second - pts[j].second);
  return icluster::precomputed_metric(std::move(m), n);
}

// Labeled nodes on a line; the usual two-ingredient fixture.
struct LineData {
  icluster::Dataset d;
  icluster::Distances dist;
  LineData(const std::vector<double>& xs, const std::vector<std::string>& labels)
      : d(labeled(labels)), dist(d, line_metric(xs)) {}
};

inline icluster::Cluster cluster(icluster::NodeId center,
                                 std::vector<icluster::NodeId> members) {
  icluster::Cluster c;
  c.center = center;
  c.members = std::move(members);
  std::sort(c.members.begin(), c.members.end());
  return c;
}

inline icluster::Clustering clustering(const icluster::Dataset& d,
                                       const icluster::Distances& dist,
                                       std::size_t k,
                                       std::vector<icluster::Cluster> parts) {
  icluster::Clustering c;
  c.k_requested = k;
  c.clusters = std::move(parts);
  c.objective = icluster::kcenter_objective(d, dist, c);
  return c;
}

inline std::vector<std::vector<icluster::NodeId>> member_sets(
    const icluster::Clustering& c) {
  std::vector<std::vector<icluster::NodeId>> out;
  for (const auto& cl : c.clusters) out.push_back(cl.members);
  std::sort(out.begin(), out.end());
  return out;
}

// Random instance: two numeric features plus a categorical FoI column with
// up to max_values labels (at least min_values distinct ones observed).
inline icluster::Dataset random_dataset(std::mt19937_64& rng, std::size_t n,
                                        std::size_t min_values,
                                        std::size_t max_values) {
  std::uniform_int_distribution<std::size_t> nv(min_values, max_values);
  const std::size_t m = std::min(nv(rng), n);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> val(0, m - 1);
  icluster::FeatureSchema s;
  s.features = {{"x", icluster::FeatureKind::numeric},
                {"y", icluster::FeatureKind::numeric},
                {"foi", icluster::FeatureKind::categorical}};
  s.foi_indices = {2};
  std::vector<std::vector<std::string>> rows(n);
  for (std::size_t r = 0; r < n; ++r) {
    // First m rows pin one node per label so all m values are observed.
    const std::size_t v = r < m ? r : val(rng);
    rows[r] = {icluster::format_double(coord(rng)),
               icluster::format_double(coord(rng)),
               std::string(1, static_cast<char>('A' + v))};
  }
  return icluster::Dataset::from_rows(s, rows);
}

}  // namespace support
