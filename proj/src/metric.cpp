#include "icluster/metric.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace icluster {

DistanceMetric euclidean_metric() { return {}; }

DistanceMetric foi_only_metric() {
  DistanceMetric m;
  m.kind = MetricKind::euclidean_foi_only;
  return m;
}

DistanceMetric precomputed_metric(std::vector<double> matrix, std::size_t n) {
  if (matrix.size() != n * n)
    throw std::invalid_argument("matrix size is not n*n");
  DistanceMetric m;
  m.kind = MetricKind::precomputed_matrix;
  m.matrix = std::make_shared<const std::vector<double>>(std::move(matrix));
  m.matrix_n = n;
  return m;
}

DistanceMetric load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::vector<double> values;
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++rows;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      double x = 0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (res.ec != std::errc{})
        throw std::runtime_error("unparseable matrix cell: '" + cell + "'");
      values.push_back(x);
    }
  }
  if (rows == 0 || values.size() != rows * rows)
    throw std::runtime_error("matrix CSV is not square");
  return precomputed_metric(std::move(values), rows);
}

namespace {

// Categorical disagreement contributes 1 under one-hot encoding scaled by
// 1/sqrt(2): (1/sqrt(2))^2 + (1/sqrt(2))^2 = 1.
double euclidean_all(const DistanceMetric& m, const Dataset& d, NodeId u,
                     NodeId v) {
  double sum = 0;
  const auto& feats = d.schema().features;
  for (std::size_t f = 0; f < feats.size(); ++f) {
    const double w = f < m.weights.size() ? m.weights[f] : 1.0;
    if (w == 0) continue;
    const Column& col = d.column(f);
    if (col.kind == FeatureKind::numeric) {
      const double diff = col.scaled[u] - col.scaled[v];
      sum += w * diff * diff;
    } else if (col.codes[u] != col.codes[v]) {
      sum += w;
    }
  }
  return std::sqrt(sum);
}

double euclidean_foi(const Dataset& d, NodeId u, NodeId v) {
  const auto& cu = d.foi(d.foi_value(u)).codes;
  const auto& cv = d.foi(d.foi_value(v)).codes;
  double sum = 0;
  for (std::size_t a = 0; a < cu.size(); ++a)
    if (cu[a] != cv[a]) sum += 1.0;
  return std::sqrt(sum);
}

}  // namespace

double distance(const DistanceMetric& m, const Dataset& d, NodeId u, NodeId v) {
  if (u >= d.size() || v >= d.size())
    throw std::invalid_argument("node id out of range");
  switch (m.kind) {
    case MetricKind::euclidean_all_features:
      return euclidean_all(m, d, u, v);
    case MetricKind::euclidean_foi_only:
      return euclidean_foi(d, u, v);
    case MetricKind::precomputed_matrix:
      if (!m.matrix || m.matrix_n != d.size())
        throw std::invalid_argument("precomputed matrix does not match dataset");
      return (*m.matrix)[static_cast<std::size_t>(u) * m.matrix_n + v];
  }
  return 0;
}

Distances::Distances(const Dataset& d, DistanceMetric m, std::size_t cache_limit)
    : dataset_(&d), metric_(std::move(m)), n_(d.size()) {
  if (n_ <= cache_limit) {
    cache_.resize(n_ * n_);
    for (NodeId u = 0; u < n_; ++u) {
      cache_[static_cast<std::size_t>(u) * n_ + u] =
          distance(metric_, d, u, u);
      for (NodeId v = u + 1; v < n_; ++v) {
        const double x = distance(metric_, d, u, v);
        cache_[static_cast<std::size_t>(u) * n_ + v] = x;
        cache_[static_cast<std::size_t>(v) * n_ + u] =
            metric_.kind == MetricKind::precomputed_matrix
                ? distance(metric_, d, v, u)
                : x;
      }
    }
  }
}

MetricValidation validate_metric(const DistanceMetric& m, const Dataset& d,
                                 bool exhaustive) {
  MetricValidation report;
  const std::size_t n = d.size();
  Distances dist(d, m);
  using Axiom = MetricValidation::Axiom;

  for (NodeId u = 0; u < n; ++u) {
    const double duu = dist(u, u);
    if (duu != 0)
      report.violations.push_back({Axiom::self_distance, u, u, 0, duu, 0});
  }
  auto differ_somewhere = [&](NodeId u, NodeId v) {
    for (std::size_t f = 0; f < d.schema().features.size(); ++f)
      if (d.cell_text(u, f) != d.cell_text(v, f)) return true;
    return false;
  };
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const double duv = dist(u, v), dvu = dist(v, u);
      if (duv < 0)
        report.violations.push_back({Axiom::non_negativity, u, v, 0, duv, 0});
      if (duv != dvu)
        report.violations.push_back({Axiom::symmetry, u, v, 0, duv, dvu});
      // Distance 0 between distinguishable nodes: expected for the foi_only
      // pseudometric, suspicious but not axiom-breaking elsewhere. Duplicate
      // rows at distance 0 are correct and not reported.
      if (duv == 0 && differ_somewhere(u, v))
        report.warnings.push_back({Axiom::identity, u, v, 0, duv, 0});
    }

  // Floating-point sums are not associative, so allow a relative epsilon on
  // the triangle check.
  auto check_triple = [&](NodeId u, NodeId v, NodeId w) {
    ++report.triples_checked;
    const double lhs = dist(u, w);
    const double rhs = dist(u, v) + dist(v, w);
    if (lhs > rhs + 1e-12 * (1.0 + rhs))
      report.violations.push_back({Axiom::triangle, u, v, w, lhs, rhs});
  };
  if (exhaustive || n <= 200) {
    report.exhaustive = true;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v)
        for (NodeId w = 0; w < n; ++w)
          if (u != v && v != w && u != w) check_triple(u, v, w);
  } else {
    std::mt19937_64 rng(0x1c3a57);
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
    for (std::size_t i = 0; i < 200000; ++i) {
      NodeId u = pick(rng), v = pick(rng), w = pick(rng);
      if (u != v && v != w && u != w) check_triple(u, v, w);
    }
  }
  return report;
}

}  // namespace icluster
