#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sgd/reduce.hpp"
#include "sgd/solve.hpp"

using namespace sgd;

TEST(ReduceMtds, PathK1) {
  auto art = reduce_mtds(path_graph(3), 1);
  EXPECT_EQ(art.graph.order(), 6);
  EXPECT_EQ(art.T, 3);
  EXPECT_EQ(art.threshold_a, 2);
  EXPECT_EQ(art.threshold_b, 0);
  EXPECT_EQ(art.map_threshold(2), 4);
  EXPECT_EQ(art.provenance[3].label(), "clique_block(2,1,0)");
  EXPECT_TRUE(art.graph.adjacent(1, 3));
  EXPECT_EQ(art.graph.degree(1), 2 * 2 + 1 - 2);
}

TEST(ReduceMtds, OrderFormula) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = oracle::random_connected(2 + trial % 8, 0.3, rng);
    const int k = 1 + trial % 3;
    auto art = reduce_mtds(g, k);
    long long t_sum = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
      t_sum += g.degree(v) + k - 2;
      EXPECT_EQ(art.graph.degree(v), 2 * g.degree(v) + k - 2);
    }
    EXPECT_EQ(art.graph.order(), g.order() + (k + 2) * t_sum);
    EXPECT_EQ(art.T, (k + 2) * t_sum);
    EXPECT_EQ(art.provenance.size(), static_cast<std::size_t>(art.graph.order()));
  }
}

TEST(ReduceMtds, FourCycleK2) {
  auto art = reduce_mtds(cycle_graph(4), 2);
  EXPECT_EQ(art.T, 32);
  EXPECT_EQ(art.graph.order(), 36);
  for (Vertex v = 0; v < 4; ++v) EXPECT_EQ(art.graph.degree(v), 2 * 2 + 2 - 2);
}

TEST(ReduceMtds, RejectsIsolatedVertex) {
  EXPECT_THROW(reduce_mtds(Graph::from_edges(3, {{0, 1}}), 1), ReductionError);
  EXPECT_THROW(reduce_mds(Graph::from_edges(3, {{0, 1}}), 1), ReductionError);
}

TEST(ReduceMds, PathK1) {
  auto art = reduce_mds(path_graph(3), 1);
  EXPECT_EQ(art.graph.order(), 11);
  EXPECT_EQ(art.T, 8);
  EXPECT_EQ(art.map_threshold(1), 7);
  EXPECT_EQ(art.threshold_b, 5);
  // gamma(P_3) = 1
  auto r = brute_force_sigma(art.graph, 1, Mode::closed);
  EXPECT_EQ(r.value, 7);
}

TEST(ReduceMds, TriangleK1) {
  auto art = reduce_mds(complete_graph(3), 1);
  EXPECT_EQ(art.T, 12);
  EXPECT_EQ(art.graph.order(), 15);
}

TEST(Reduce1in3, SingleClause) {
  auto art = reduce_1in3(ThreeSatFormula(3, {{1, 2, 3}}), 1);
  EXPECT_EQ(art.graph.order(), 15);
  EXPECT_EQ(art.threshold_value, 9);
  EXPECT_EQ(art.clause_vertex, (std::vector<Vertex>{0}));
  EXPECT_EQ(art.x_prime, (std::vector<Vertex>{3, 7, 11}));
  EXPECT_EQ(art.x_double_prime, (std::vector<Vertex>{4, 8, 12}));
  for (int j = 0; j < 3; ++j) {
    EXPECT_FALSE(art.graph.adjacent(art.x_prime[j], art.x_double_prime[j]));
    EXPECT_TRUE(art.graph.adjacent(0, art.x_prime[j]));
  }
  EXPECT_EQ(art.provenance[0].label(), "clause_block(1,0)");
  EXPECT_EQ(art.provenance[8].label(), "variable_block(2,1)");
  EXPECT_EQ(emit_provenance(art).substr(0, 20), "1 clause_block(1,0)\n");
}

TEST(Reduce1in3, UnsatisfiableInstanceSize) {
  ThreeSatFormula f(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  auto art = reduce_1in3(f, 1);
  EXPECT_EQ(art.graph.order(), 28);
  EXPECT_EQ(art.threshold_value, 20);
  EXPECT_FALSE(one_in_three_sat(f).has_value());
}

TEST(Reduce1in3, OrderFormulaForLargerK) {
  for (int k = 1; k <= 4; ++k) {
    auto art = reduce_1in3(ThreeSatFormula(5, {{1, 2, 3}, {3, 4, 5}, {1, 4, 5}}), k);
    EXPECT_EQ(art.graph.order(), (k + 3) * 5 + (k + 2) * 3);
    EXPECT_EQ(art.threshold_value, (k + 1) * 5 + (k + 2) * 3);
  }
}

TEST(FormulaFile, ParseAndErrors) {
  auto f = parse_cnf("c x\np cnf 3 1\n1 2 3 0\n");
  EXPECT_EQ(f.num_vars(), 3);
  EXPECT_EQ(f.num_clauses(), 1);
  EXPECT_EQ(parse_cnf(emit_cnf(f)).clauses(), f.clauses());
  EXPECT_THROW(parse_cnf("p cnf 3 1\n1 -2 3 0\n"), FormatError);
  EXPECT_THROW(parse_cnf("p cnf 3 1\n1 1 3 0\n"), FormatError);
  EXPECT_THROW(parse_cnf("p cnf 3 1\n1 2 0\n"), FormatError);
  EXPECT_THROW(parse_cnf("p cnf 3 2\n1 2 3 0\n"), FormatError);
  EXPECT_THROW(parse_cnf("p cnf 3 1\n1 2 4 0\n"), FormatError);
  EXPECT_THROW(ThreeSatFormula(3, {{1, 2, 2}}), std::invalid_argument);
}

TEST(LiftProject, TotalDomination) {
  auto art = reduce_mtds(path_graph(3), 1);
  SignFunction f = lift_dominating_set(art, {1, 0});
  EXPECT_EQ(f.weight(), 4);
  EXPECT_TRUE(verify(art.graph, 1, Mode::total, f).feasible);
  EXPECT_THROW(lift_dominating_set(art, {1}), ReductionError);  // not total dominating

  auto opt = brute_force_sigma(art.graph, 1, Mode::total);
  auto S = project_to_set(art, *opt.certificate);
  EXPECT_EQ(S.size(), 2u);
  EXPECT_EQ(static_cast<int>(S.size()), gamma_t(path_graph(3)));
}

TEST(LiftProject, Domination) {
  auto art = reduce_mds(path_graph(3), 1);
  SignFunction f = lift_dominating_set(art, {1});
  EXPECT_EQ(f.weight(), 7);
  EXPECT_EQ(art.graph.order(), 11);
  EXPECT_TRUE(verify(art.graph, 1, Mode::closed, f).feasible);
  auto S = project_to_set(art, f);
  EXPECT_EQ(S, (std::vector<Vertex>{1}));
  EXPECT_THROW(lift_dominating_set(art, {0}), ReductionError);
  EXPECT_THROW(project_to_set(art, SignFunction::from_plus_set(11, {})), ReductionError);
}

TEST(LiftProject, SetRoundTrips) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_connected(3 + trial % 4, 0.4, rng);
    for (int k = 1; k <= 2; ++k)
      for (bool total : {false, true}) {
        auto art = total ? reduce_mtds(g, k) : reduce_mds(g, k);
        const int n = g.order();
        for (long long mask = 0; mask < (1LL << n); ++mask) {
          std::vector<Vertex> S;
          for (int v = 0; v < n; ++v)
            if (mask >> v & 1) S.push_back(v);
          if (oracle::min_dominating(g, total) > n) continue;
          SignFunction f;
          try {
            f = lift_dominating_set(art, S);
          } catch (const ReductionError&) {
            continue;
          }
          EXPECT_EQ(f.weight(), art.map_threshold(static_cast<long long>(S.size())));
          EXPECT_TRUE(verify(art.graph, k, art.mode(), f).feasible);
          EXPECT_EQ(project_to_set(art, f), S);
          EXPECT_EQ(lift_dominating_set(art, project_to_set(art, f)).weight(), f.weight());
        }
      }
  }
}

TEST(LiftProject, SatSingleClause) {
  ThreeSatFormula F(3, {{1, 2, 3}});
  auto art = reduce_1in3(F, 1);
  SignFunction f = lift_assignment(art, {true, false, false});
  EXPECT_EQ(f.weight(), 9);
  EXPECT_TRUE(verify(art.graph, 1, Mode::closed, f).feasible);
  EXPECT_TRUE(is_minimal_skdf(art.graph, 1, f).minimal);
  EXPECT_EQ(project_to_assignment(art, f), (std::vector<bool>{true, false, false}));
  EXPECT_THROW(lift_assignment(art, {true, true, false}), ReductionError);
}

TEST(LiftProject, EveryMinimalWeightNineFunctionProjectsToWitness) {
  ThreeSatFormula F(3, {{1, 2, 3}});
  auto art = reduce_1in3(F, 1);
  int count = 0;
  oracle::for_each_assignment(art.graph.order(), [&](const oracle::Assignment& a) {
    if (oracle::weight(a) != 9 || !oracle::feasible(art.graph, 1, true, a)) return;
    SignFunction f(a);
    if (!is_minimal_skdf(art.graph, 1, f).minimal) return;
    auto A = project_to_assignment(art, f);
    EXPECT_TRUE(F.satisfied_one_in_three(A));
    EXPECT_EQ(lift_assignment(art, A).weight(), f.weight());
    ++count;
  });
  EXPECT_GT(count, 0);
}

TEST(Structure, CliqueBlocksForcedPlus) {
  for (int k = 1; k <= 2; ++k) {
    auto mtds = reduce_mtds(path_graph(3), k);
    auto mds = reduce_mds(path_graph(3), k);
    for (const auto* art : {&mtds, &mds}) {
      if (art->graph.order() > 20) continue;
      oracle::for_each_assignment(art->graph.order(), [&](const oracle::Assignment& a) {
        if (!oracle::feasible(art->graph, k, art->mode() == Mode::closed, a)) return;
        for (Vertex v = 3; v < art->graph.order(); ++v) EXPECT_EQ(a[v], 1);
      });
    }
  }
}
