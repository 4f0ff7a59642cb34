#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sgd/certify.hpp"
#include "sgd/extremal.hpp"
#include "sgd/reduce.hpp"

using namespace sgd;

TEST(SignFunction, RejectsNonSigns) {
  EXPECT_THROW(SignFunction({1, 0, -1}), CertificateError);
  SignFunction f({1, -1, 1});
  EXPECT_EQ(f.weight(), 1);
  EXPECT_EQ(f.flipped(0).weight(), -1);
}

TEST(Verify, CompleteGraphClosed) {
  auto r = verify(complete_graph(3), 1, Mode::closed, SignFunction({1, 1, -1}));
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.per_vertex_sum, (std::vector<long long>{1, 1, 1}));
  EXPECT_EQ(r.min_slack, 0);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Verify, FourCycleTotal) {
  auto r = verify(cycle_graph(4), 1, Mode::total, SignFunction({1, 1, 1, -1}));
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.violations, (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(r.per_vertex_sum[0], 0);
  EXPECT_EQ(r.per_vertex_sum[2], 0);
  EXPECT_LT(r.min_slack, 0);
}

TEST(Verify, ExtremalCertificateSums) {
  auto inst = build_extremal({1, 2, 3, 4, Mode::closed});
  auto r = verify(inst.graph, 1, Mode::closed, inst.certificate);
  EXPECT_TRUE(r.feasible);
  for (Vertex v : inst.P) EXPECT_EQ(r.per_vertex_sum[v], 2);
  for (Vertex v : inst.Q) EXPECT_EQ(r.per_vertex_sum[v], 1);
}

TEST(Verify, LengthMismatch) {
  EXPECT_THROW(verify(complete_graph(3), 1, Mode::closed, SignFunction({1, 1})), CertificateError);
}

TEST(Verify, ParityAndMonotonicity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = oracle::random_connected(3 + trial % 7, 0.35, rng);
    const int k = 1 + trial % 3;
    oracle::for_each_assignment(g.order(), [&](const oracle::Assignment& a) {
      SignFunction f(a);
      EXPECT_EQ(((f.weight() - g.order()) % 2 + 2) % 2, 0);
      for (Mode mode : {Mode::closed, Mode::total}) {
        auto r = verify(g, k, mode, f);
        for (Vertex v = 0; v < g.order(); ++v) {
          int size = g.degree(v) + (mode == Mode::closed ? 1 : 0);
          EXPECT_EQ(((r.per_vertex_sum[v] - size) % 2 + 2) % 2, 0);
        }
        EXPECT_EQ(r.feasible, r.min_slack >= 0);
        // raising any -1 keeps a feasible function feasible
        if (r.feasible)
          for (Vertex v = 0; v < g.order(); ++v)
            if (f[v] == -1) EXPECT_TRUE(verify(g, k, mode, f.flipped(v)).feasible);
      }
    });
  }
}

TEST(Verify, InfeasibleBelowDegreeThreshold) {
  Graph p3 = path_graph(3);  // minimum degree 1
  oracle::for_each_assignment(3, [&](const oracle::Assignment& a) {
    EXPECT_FALSE(verify(p3, 3, Mode::closed, SignFunction(a)).feasible);  // needs delta >= 2
    EXPECT_FALSE(verify(p3, 2, Mode::total, SignFunction(a)).feasible);   // needs delta >= 2
  });
}

TEST(Minimality, CompleteGraph) {
  Graph k3 = complete_graph(3);
  auto yes = is_minimal_skdf(k3, 1, SignFunction({1, 1, -1}));
  EXPECT_TRUE(yes.minimal);
  EXPECT_EQ(yes.witness.at(0), 0);
  EXPECT_EQ(yes.witness.at(1), 0);

  auto no = is_minimal_skdf(k3, 1, SignFunction({1, 1, 1}));
  EXPECT_FALSE(no.minimal);
  ASSERT_TRUE(no.offending.has_value());
  EXPECT_EQ(*no.offending, 0);
}

TEST(Minimality, RequiresFeasible) {
  EXPECT_THROW(is_minimal_skdf(complete_graph(3), 1, SignFunction({-1, -1, 1})), CertificateError);
}

TEST(Minimality, GadgetVariableBlockAllPlus) {
  ThreeSatFormula f(3, {{1, 2, 3}});
  auto art = reduce_1in3(f, 1);
  SignFunction lifted = lift_assignment(art, {true, false, false});
  // x_1 TRUE puts the -1 of block 1 on x''_1; raise it so the whole block is +1.
  SignFunction g = lifted.flipped(art.x_double_prime[0]);
  ASSERT_TRUE(verify(art.graph, 1, Mode::closed, g).feasible);
  auto rep = is_minimal_skdf(art.graph, 1, g);
  EXPECT_FALSE(rep.minimal);
  ASSERT_TRUE(rep.offending.has_value());
  EXPECT_EQ(*rep.offending, art.x_double_prime[0]);
}

TEST(Minimality, SingleFlipMatchesDefinition) {
  for (int n = 1; n <= 4; ++n)
    for (const Graph& g : oracle::all_labeled_graphs(n))
      for (int k = 1; k <= 2; ++k)
        oracle::for_each_assignment(n, [&](const oracle::Assignment& a) {
          if (!oracle::feasible(g, k, true, a)) return;
          EXPECT_EQ(is_minimal_skdf(g, k, SignFunction(a)).minimal, oracle::minimal_by_definition(g, k, a));
        });
}

TEST(ForcedPlus, Examples) {
  EXPECT_EQ(forced_plus_vertices(path_graph(3), 1, Mode::closed), (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(forced_plus_vertices(cycle_graph(4), 1, Mode::total), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_TRUE(forced_plus_vertices(complete_graph(5), 2, Mode::total).empty());
  EXPECT_TRUE(forced_plus_vertices(Graph{}, 1, Mode::closed).empty());
}

TEST(ForcedPlus, SoundOnSmallGraphs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    Graph g = oracle::random_connected(2 + trial % 11, 0.25, rng);
    const int k = 1 + trial % 3;
    for (Mode mode : {Mode::closed, Mode::total}) {
      auto forced = forced_plus_vertices(g, k, mode);
      oracle::for_each_assignment(g.order(), [&](const oracle::Assignment& a) {
        if (!oracle::feasible(g, k, mode == Mode::closed, a)) return;
        for (Vertex v : forced) EXPECT_EQ(a[v], 1);
      });
    }
  }
}

TEST(CertificateFile, ParseAndEmit) {
  Certificate c = parse_certificate("c x\ns sgd-cert 3 1 closed\nv 3 -1\nv 1 +1\nv 2 +1\n");
  EXPECT_EQ(c.k, 1);
  EXPECT_EQ(c.mode, Mode::closed);
  EXPECT_EQ(c.f, SignFunction({1, 1, -1}));
  EXPECT_EQ(emit_certificate(c), "s sgd-cert 3 1 closed\nv 1 +1\nv 2 +1\nv 3 -1\n");
  EXPECT_EQ(parse_certificate(emit_certificate(c)).f, c.f);
}

TEST(CertificateFile, Errors) {
  EXPECT_THROW(parse_certificate("s sgd-cert 2 1 closed\nv 1 +1"), FormatError);          // missing vertex
  EXPECT_THROW(parse_certificate("s sgd-cert 2 1 closed\nv 1 +1\nv 1 -1"), FormatError);  // twice
  EXPECT_THROW(parse_certificate("s sgd-cert 2 1 open\nv 1 +1\nv 2 +1"), FormatError);    // bad mode
  EXPECT_THROW(parse_certificate("s sgd-cert 2 1 total\nv 1 0\nv 2 +1"), FormatError);    // bad value
  EXPECT_THROW(parse_certificate("s sgd-cert 2 1 total\nv 3 +1\nv 2 +1"), FormatError);   // range
}
