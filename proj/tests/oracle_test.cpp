#include <random>
#include <vector>

#include "doctest.h"
#include "icluster/interpretability.hpp"
#include "icluster/oracle.hpp"
#include "support.hpp"

using namespace icluster;

TEST_SUITE("oracle") {

TEST_CASE("exact k-center on the 0-1-10-11 line") {
  support::LineData ld({0, 1, 10, 11}, {"A", "A", "A", "A"});
  OracleResult r = brute_force_kcenter_opt(ld.d, ld.dist, 2);
  CHECK(r.opt_objective == doctest::Approx(1.0));
  CHECK(support::member_sets(r.witness) ==
        std::vector<std::vector<NodeId>>{{0, 1}, {2, 3}});
  validate_clustering(r.witness, ld.d.all_ids());

  CHECK(brute_force_kcenter_opt(ld.d, ld.dist, 4).opt_objective == 0.0);
  CHECK(brute_force_kcenter_opt(ld.d, ld.dist, 9).opt_objective == 0.0);
  CHECK(brute_force_kcenter_opt(ld.d, ld.dist, 1).opt_objective ==
        doctest::Approx(10.0));
}

TEST_CASE("the guard rejects oversized instances and k = 0") {
  Dataset big = synthesize(13, 2, 3, {}, 2, 1);
  Distances dist(big, euclidean_metric());
  CHECK_THROWS_AS(brute_force_kcenter_opt(big, dist, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_beta_max(big, 2), std::invalid_argument);

  support::LineData ld({0, 1}, {"A", "B"});
  CHECK_THROWS_AS(brute_force_kcenter_opt(ld.d, ld.dist, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(brute_force_interpretable_opt(ld.d, ld.dist, 1, 1.5),
                  std::invalid_argument);
}

TEST_CASE("interpretable optimum pays for purity on the mixed line") {
  support::LineData ld({0, 1, 10, 11}, {"A", "B", "A", "B"});
  OracleResult pure = brute_force_interpretable_opt(ld.d, ld.dist, 2, 1.0);
  CHECK(pure.opt_objective == doctest::Approx(10.0));
  CHECK(support::member_sets(pure.witness) ==
        std::vector<std::vector<NodeId>>{{0, 2}, {1, 3}});

  OracleResult free = brute_force_interpretable_opt(ld.d, ld.dist, 2, 0.0);
  OracleResult plain = brute_force_kcenter_opt(ld.d, ld.dist, 2);
  CHECK(free.opt_objective == plain.opt_objective);
  CHECK(free.opt_objective == doctest::Approx(1.0));
}

TEST_CASE("a single FoI value makes every beta free") {
  support::LineData ld({0, 2, 9, 11}, {"A", "A", "A", "A"});
  for (double beta : {0.0, 0.5, 1.0}) {
    OracleResult r = brute_force_interpretable_opt(ld.d, ld.dist, 2, beta);
    CHECK(r.opt_objective ==
          brute_force_kcenter_opt(ld.d, ld.dist, 2).opt_objective);
  }
}

TEST_CASE("infeasible beta reports the achievable maximum") {
  support::LineData ld({0, 1, 2}, {"A", "B", "C"});
  CHECK(brute_force_beta_max(ld.d, 2) == doctest::Approx(0.5));
  try {
    brute_force_interpretable_opt(ld.d, ld.dist, 2, 1.0);
    FAIL("expected InfeasibleBetaError");
  } catch (const InfeasibleBetaError& e) {
    CHECK(e.requested == 1.0);
    CHECK(e.beta_max == doctest::Approx(0.5));
  }
  CHECK_NOTHROW(brute_force_interpretable_opt(ld.d, ld.dist, 2, 0.5));
}

TEST_CASE("beta_max is exact on the 5-3-2 frozen instance") {
  std::vector<std::string> labels(5, "A");
  labels.insert(labels.end(), 3, "B");
  labels.insert(labels.end(), 2, "C");
  Dataset d = support::labeled(labels);
  CHECK(brute_force_beta_max(d, 2) == doctest::Approx(0.75));
  CHECK(brute_force_beta_max(d, 3) == 1.0);   // |F| <= k
  CHECK(brute_force_beta_max(d, 10) == 1.0);  // n = k, singletons
}

TEST_CASE("feasible_count matches the partition combinatorics") {
  support::LineData three({0, 1, 2}, {"A", "A", "A"});
  CHECK(brute_force_kcenter_opt(three.d, three.dist, 3).feasible_count == 5);
  CHECK(brute_force_kcenter_opt(three.d, three.dist, 2).feasible_count == 4);

  support::LineData four({0, 1, 2, 3}, {"A", "A", "A", "A"});
  CHECK(brute_force_kcenter_opt(four.d, four.dist, 4).feasible_count == 15);
  CHECK(brute_force_kcenter_opt(four.d, four.dist, 2).feasible_count == 8);
}

TEST_CASE("objective is monotone in beta and bounded below by plain opt") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<std::size_t> nn(4, 9), kk(1, 3);
    Dataset d = support::random_dataset(rng, nn(rng), 1, 3);
    Distances dist(d, euclidean_metric());
    const std::size_t k = kk(rng);
    const double plain = brute_force_kcenter_opt(d, dist, k).opt_objective;
    const double bmax = brute_force_beta_max(d, k);
    double prev = plain;
    for (double beta : {0.25, 0.5, 0.75, 1.0}) {
      if (beta > bmax + 1e-12) {
        CHECK_THROWS_AS(brute_force_interpretable_opt(d, dist, k, beta),
                        InfeasibleBetaError);
        continue;
      }
      OracleResult r = brute_force_interpretable_opt(d, dist, k, beta);
      validate_clustering(r.witness, d.all_ids());
      CHECK(score_clustering(d, r.witness).clustering_score >= beta - 1e-12);
      CHECK(r.opt_objective >= plain - 1e-12);
      CHECK(r.opt_objective >= prev - 1e-12);
      prev = r.opt_objective;
    }
  }
}

TEST_CASE("witnesses are reproducible and self-consistent") {
  std::mt19937_64 rng(7070);
  Dataset d = support::random_dataset(rng, 8, 2, 3);
  Distances dist(d, euclidean_metric());
  OracleResult a = brute_force_kcenter_opt(d, dist, 3);
  OracleResult b = brute_force_kcenter_opt(d, dist, 3);
  CHECK(support::member_sets(a.witness) == support::member_sets(b.witness));
  CHECK(kcenter_objective(d, dist, a.witness) ==
        doctest::Approx(a.opt_objective));
}

}  // TEST_SUITE
