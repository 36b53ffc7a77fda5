#include <random>
#include <vector>

#include "doctest.h"
#include "icluster/interpretability.hpp"
#include "icluster/oracle.hpp"
#include "icluster/strong_cluster.hpp"
#include "support.hpp"

using namespace icluster;

TEST_SUITE("strong_cluster") {

TEST_CASE("compositions enumerate in ascending lexicographic order") {
  CHECK(enumerate_compositions(2, 3) ==
        std::vector<std::vector<std::size_t>>{{1, 2}, {2, 1}});
  CHECK(enumerate_compositions(4, 4) ==
        std::vector<std::vector<std::size_t>>{{1, 1, 1, 1}});
  CHECK(enumerate_compositions(1, 5) ==
        std::vector<std::vector<std::size_t>>{{5}});
  CHECK(enumerate_compositions(4, 5).size() == 4);   // C(4,3)
  CHECK(enumerate_compositions(4, 6).size() == 10);  // C(5,3)
}

TEST_CASE("composition entries are positive, sum to k, and stay sorted") {
  auto all = enumerate_compositions(3, 7);
  CHECK(all.size() == 15);  // C(6,2)
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::size_t sum = 0;
    for (std::size_t part : all[i]) {
      CHECK(part >= 1);
      sum += part;
    }
    CHECK(sum == 7);
    if (i) CHECK(all[i - 1] < all[i]);
  }
}

TEST_CASE("composition bounds are enforced") {
  CHECK_THROWS_AS(enumerate_compositions(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_compositions(4, 3), std::invalid_argument);
}

TEST_CASE("two values on the line split by value") {
  support::LineData ld({0, 1, 10, 11}, {"A", "B", "A", "B"});
  Clustering c = strong_interpretability(ld.d, ld.dist, 2);
  validate_clustering(c, ld.d.all_ids());
  CHECK(support::member_sets(c) ==
        std::vector<std::vector<NodeId>>{{0, 2}, {1, 3}});
  CHECK(c.objective == doctest::Approx(10.0));
  CHECK(score_clustering(ld.d, c).clustering_score == 1.0);
}

TEST_CASE("infeasible compositions are skipped") {
  // A has one node, so (2,1) cannot be realized; (1,2) wins by default.
  support::LineData ld({0, 5, 6, 7}, {"A", "B", "B", "B"});
  Clustering c = strong_interpretability(ld.d, ld.dist, 3);
  validate_clustering(c, ld.d.all_ids());
  CHECK(c.clusters.size() == 3);
  CHECK(c.objective == doctest::Approx(1.0));
  for (const auto& cl : c.clusters)
    CHECK(cluster_score(ld.d, cl.members).score == 1.0);
}

TEST_CASE("ties go to the first composition in enumeration order") {
  // (1,2) and (2,1) both reach objective 1; (1,2) keeps A whole.
  support::LineData ld({0, 1, 10, 11}, {"A", "A", "B", "B"});
  Clustering c = strong_interpretability(ld.d, ld.dist, 3);
  CHECK(support::member_sets(c) ==
        std::vector<std::vector<NodeId>>{{0, 1}, {2}, {3}});
}

TEST_CASE("guards reject more values than clusters and starved splits") {
  support::LineData three({0, 1, 2}, {"A", "B", "C"});
  CHECK_THROWS_AS(strong_interpretability(three.d, three.dist, 2),
                  std::invalid_argument);

  support::LineData tiny({0, 1, 2}, {"A", "B", "B"});
  CHECK_THROWS_AS(strong_interpretability(tiny.d, tiny.dist, 4),
                  std::runtime_error);
}

TEST_CASE("every cluster is pure and within twice the exact optimum") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<std::size_t> nn(4, 9), kk(2, 4);
    Dataset d = support::random_dataset(rng, nn(rng), 2, 3);
    Distances dist(d, euclidean_metric());
    std::size_t k = std::min(kk(rng), d.size());
    if (d.foi_values().size() > k) k = d.foi_values().size();

    Clustering c = strong_interpretability(d, dist, k);
    validate_clustering(c, d.all_ids());
    CHECK(score_clustering(d, c).clustering_score == 1.0);

    OracleResult opt = brute_force_interpretable_opt(d, dist, k, 1.0);
    CHECK(c.objective <= 2.0 * opt.opt_objective + 1e-9);
  }
}

TEST_CASE("seeded trials stay deterministic and pure") {
  Dataset d = synthesize(60, 3, 4, {}, 3, 8);
  Distances dist(d, euclidean_metric());
  Clustering a = strong_interpretability(d, dist, 6, 42, 3);
  Clustering b = strong_interpretability(d, dist, 6, 42, 3);
  CHECK(support::member_sets(a) == support::member_sets(b));
  CHECK(score_clustering(d, a).clustering_score == 1.0);
  Clustering plain = strong_interpretability(d, dist, 6);
  CHECK(score_clustering(d, plain).clustering_score == 1.0);
}

}  // TEST_SUITE
