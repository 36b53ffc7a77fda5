#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "doctest.h"
#include "icluster/dataset.hpp"
#include "icluster/metric.hpp"
#include "support.hpp"

using namespace icluster;

namespace {

Dataset four_categoricals(const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  FeatureSchema s;
  s.features = {{"c0", FeatureKind::categorical},
                {"c1", FeatureKind::categorical},
                {"c2", FeatureKind::categorical},
                {"c3", FeatureKind::categorical}};
  s.foi_indices = {0};
  return Dataset::from_rows(s, {a, b});
}

}  // namespace

TEST_SUITE("metric") {

TEST_CASE("identical feature vectors are at distance zero") {
  FeatureSchema s;
  s.features = {{"x", FeatureKind::numeric}, {"color", FeatureKind::categorical}};
  s.foi_indices = {1};
  Dataset d = Dataset::from_rows(s, {{"0.5", "A"}, {"0.5", "A"}, {"1", "B"}});
  CHECK(distance(euclidean_metric(), d, 0, 1) == 0.0);
  CHECK(distance(euclidean_metric(), d, 0, 0) == 0.0);
}

TEST_CASE("1-D euclidean distance matches the coordinate gap") {
  FeatureSchema s;
  s.features = {{"x", FeatureKind::numeric}};
  s.foi_indices = {0};
  Dataset d = Dataset::from_rows(s, {{"0"}, {"1"}});
  CHECK(distance(euclidean_metric(), d, 0, 1) == doctest::Approx(1.0));
}

TEST_CASE("categorical disagreement costs one per feature") {
  Dataset d = four_categoricals({"A", "A", "A", "A"}, {"A", "A", "B", "B"});
  CHECK(distance(euclidean_metric(), d, 0, 1) ==
        doctest::Approx(std::sqrt(2.0)));

  DistanceMetric weighted = euclidean_metric();
  weighted.weights = {1, 1, 1, 1};
  CHECK(distance(weighted, d, 0, 1) == doctest::Approx(std::sqrt(2.0)));
  weighted.weights = {1, 1, 0, 0};
  CHECK(distance(weighted, d, 0, 1) == 0.0);
  weighted.weights = {1, 1, 4, 0};
  CHECK(distance(weighted, d, 0, 1) == doctest::Approx(2.0));
}

TEST_CASE("distance rejects out-of-range ids") {
  Dataset d = support::labeled({"A", "B"});
  CHECK_THROWS_AS(distance(foi_only_metric(), d, 0, 5), std::invalid_argument);
}

TEST_CASE("built-in euclidean passes validation on random data") {
  for (std::uint64_t seed : {1, 2, 3}) {
    Dataset d = synthesize(40, 3, 3, {}, 2, seed);
    auto report = validate_metric(euclidean_metric(), d, true);
    CHECK(report.ok());
    CHECK(report.exhaustive);
    CHECK(report.triples_checked > 0);
  }
}

TEST_CASE("triangle violation is caught with a witness") {
  Dataset d = support::labeled({"A", "A", "B"});
  // d(0,2) = 10 but d(0,1) + d(1,2) = 2.
  DistanceMetric m = precomputed_metric({0, 1, 10, 1, 0, 1, 10, 1, 0}, 3);
  auto report = validate_metric(m, d, true);
  REQUIRE_FALSE(report.ok());
  bool found = false;
  for (const auto& v : report.violations) {
    if (v.axiom != MetricValidation::Axiom::triangle) continue;
    found = true;
    CHECK(v.lhs == doctest::Approx(10.0));
    CHECK(v.rhs == doctest::Approx(2.0));
  }
  CHECK(found);
}

TEST_CASE("asymmetry and negative entries are violations") {
  Dataset d = support::labeled({"A", "B"});
  auto report = validate_metric(precomputed_metric({0, 1, 2, 0}, 2), d, true);
  REQUIRE_FALSE(report.ok());
  bool sym = false;
  for (const auto& v : report.violations)
    sym |= v.axiom == MetricValidation::Axiom::symmetry;
  CHECK(sym);

  auto neg = validate_metric(precomputed_metric({0, -1, -1, 0}, 2), d, true);
  REQUIRE_FALSE(neg.ok());
  bool nonneg = false;
  for (const auto& v : neg.violations)
    nonneg |= v.axiom == MetricValidation::Axiom::non_negativity;
  CHECK(nonneg);

  auto self = validate_metric(precomputed_metric({0.5, 1, 1, 0}, 2), d, true);
  REQUIRE_FALSE(self.ok());
}

TEST_CASE("foi-only pseudometric warns instead of failing") {
  // Nodes 0 and 1 share a label but sit at different positions, so the
  // label-only distance of 0 cannot separate them.
  FeatureSchema s;
  s.features = {{"x", FeatureKind::numeric},
                {"foi", FeatureKind::categorical}};
  s.foi_indices = {1};
  Dataset d = Dataset::from_rows(s, {{"0", "A"}, {"5", "A"}, {"9", "B"}});
  CHECK(distance(foi_only_metric(), d, 0, 1) == 0.0);
  CHECK(distance(foi_only_metric(), d, 0, 2) == doctest::Approx(1.0));
  auto report = validate_metric(foi_only_metric(), d, true);
  CHECK(report.ok());  // identity failures downgrade to warnings
  CHECK_FALSE(report.warnings.empty());
  bool identity = false;
  for (const auto& w : report.warnings)
    identity |= w.axiom == MetricValidation::Axiom::identity;
  CHECK(identity);
}

TEST_CASE("matrix CSV loads back the same distances") {
  auto dir = std::filesystem::temp_directory_path() / "icluster_tests";
  std::filesystem::create_directories(dir);
  auto path = (dir / "matrix.csv").string();
  std::ofstream(path) << "0,1,2\n1,0,1.5\n2,1.5,0\n";
  DistanceMetric m = load_matrix_csv(path);
  Dataset d = support::labeled({"A", "B", "A"});
  CHECK(distance(m, d, 0, 2) == doctest::Approx(2.0));
  CHECK(distance(m, d, 1, 2) == doctest::Approx(1.5));
  CHECK(validate_metric(m, d, true).ok());
}

TEST_CASE("distance cache agrees with direct evaluation") {
  Dataset d = synthesize(30, 3, 3, {}, 2, 5);
  Distances cached(d, euclidean_metric());
  Distances direct(d, euclidean_metric(), 0);  // cache disabled
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<NodeId> pick(0, 29);
  for (int i = 0; i < 200; ++i) {
    NodeId u = pick(rng), v = pick(rng);
    CHECK(cached(u, v) == doctest::Approx(direct(u, v)).epsilon(1e-12));
    CHECK(cached(u, v) == cached(v, u));
  }
}

}  // TEST_SUITE
