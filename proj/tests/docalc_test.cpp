#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "admg/docalc.hpp"
#include "admg/graph_io.hpp"
#include "admg/sem.hpp"
#include "admg/separation.hpp"
#include "oracles.hpp"

namespace admg {
namespace {

constexpr NodeId A = 1, B = 2, C = 3;

MixedGraph treatment_alt() {
  MixedGraph g(3);
  g.set_names({"A", "B", "C"});
  g.add_arrow(A, B);
  g.add_line(A, C);
  g.add_line(B, C);
  return g;
}

MixedGraph treatment_orig() {
  MixedGraph g(3);
  g.set_names({"A", "B", "C"});
  g.add_arrow(A, B);
  g.add_biarrow(A, B);
  g.add_biarrow(A, C);
  g.add_biarrow(B, C);
  return g;
}

TEST(Intervene, Treatment) {
  const MixedGraph h = intervene(treatment_alt(), NodeSet{A});
  EXPECT_EQ(h.arrows(), (std::vector<Edge>{{A, B}}));
  EXPECT_EQ(h.lines(), (std::vector<Edge>{{B, C}}));
}

TEST(Intervene, BridgesLinePathsThroughTheTarget) {
  MixedGraph g(5);
  g.add_line(1, 2);
  g.add_line(2, 3);
  g.add_line(3, 4);
  g.add_arrow(5, 2);
  const MixedGraph h = intervene(g, NodeSet{2, 3});
  EXPECT_EQ(h.lines(), (std::vector<Edge>{{1, 4}}));
  EXPECT_EQ(h.arrow_count(), 0);
}

TEST(Intervene, OriginalDialectDropsBiarrows) {
  const MixedGraph h = intervene(treatment_orig(), NodeSet{A});
  EXPECT_EQ(h.arrows(), (std::vector<Edge>{{A, B}}));
  EXPECT_EQ(h.biarrows(), (std::vector<Edge>{{B, C}}));
}

TEST(Intervene, EmptySetIsIdentity) {
  for_each_graph(3, Dialect::Alternative,
                 [](const MixedGraph& g) { EXPECT_EQ(intervene(g, NodeSet{}), g); });
}

TEST(Intervene, IdempotentAndNoArrowsIntoTarget) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> size(2, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = size(rng);
    const MixedGraph g = oracle::random_graph(n, trial % 2 ? Dialect::Original : Dialect::Alternative, rng);
    const NodeSet x = NodeSet::from_bits(rng() & NodeSet::range(n).bits());
    const MixedGraph h = intervene(g, x);
    EXPECT_EQ(intervene(h, x), h) << serialize_graph(g);
    EXPECT_NO_THROW(validate(h));
    for (NodeId v : x) {
      EXPECT_TRUE(h.parents(v).empty());
      EXPECT_TRUE(h.neighbours(v).empty());
      EXPECT_TRUE(h.spouses(v).empty());
    }
  }
}

// do(X) in the linear SEM: X's equation becomes X = ε_X with ε_X independent
// of everything else; the other errors keep their joint law.
CovarianceMatrix intervened_covariance(const LinearSem& sem, NodeSet x) {
  Eigen::MatrixXd beta = sem.beta();
  Eigen::MatrixXd lambda = sem.lambda();
  for (NodeId v : x) {
    const int i = v - 1;
    beta.row(i).setZero();
    lambda.row(i).setZero();
    lambda.col(i).setZero();
    lambda(i, i) = 1.0;
  }
  const Eigen::Index n = beta.rows();
  const Eigen::MatrixXd delta = (Eigen::MatrixXd::Identity(n, n) - beta).inverse();
  return delta * lambda * delta.transpose();
}

TEST(Intervene, GraphIsMarkovForTheIntervenedSem) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + trial % 3;
    const MixedGraph g = oracle::random_graph(n, Dialect::Alternative, rng);
    const NodeSet x = NodeSet::from_bits(rng() & NodeSet::range(n).bits());
    const MixedGraph h = intervene(g, x);
    const CovarianceMatrix sigma =
        intervened_covariance(random_sem(g, static_cast<std::uint64_t>(trial)), x);
    oracle::for_each_singleton_query(h, [&](const SeparationQuery& q) {
      if (!separated(h, q, Criterion::Route)) return;
      EXPECT_LT(std::abs(partial_correlation(sigma, q.x.first(), q.y.first(), q.z)), 1e-7)
          << serialize_graph(g) << " do " << to_string(x);
    });
  }
}

TEST(RegimeNodes, AppendedAfterUniverse) {
  const RegimeGraph rg = add_regime_nodes(treatment_alt(), NodeSet{A, C});
  EXPECT_EQ(rg.graph.universe_size(), 5);
  EXPECT_TRUE(rg.graph.has_arrow(4, A));
  EXPECT_TRUE(rg.graph.has_arrow(5, C));
  EXPECT_EQ(rg.graph.label(4), "F_A");
  EXPECT_EQ(rg.indicators(NodeSet{C}), NodeSet{5});
  EXPECT_THROW(rg.indicators(NodeSet{B}), Error);
}

TEST(Rules, TreatmentAlternative) {
  const MixedGraph g = treatment_alt();
  EXPECT_TRUE(rule_applicable(g, 3, {}, NodeSet{C}, NodeSet{A}, {}));
  EXPECT_TRUE(rule_applicable(g, 2, {}, NodeSet{B}, NodeSet{A}, NodeSet{C}));
  // B depends on A observationally, so rule 3 cannot drop do(A) from p(B).
  EXPECT_FALSE(rule_applicable(g, 3, {}, NodeSet{B}, NodeSet{A}, {}));
}

TEST(Rules, TreatmentOriginal) {
  const MixedGraph g = treatment_orig();
  EXPECT_FALSE(rule_applicable(g, 2, {}, NodeSet{B}, NodeSet{A}, NodeSet{C}));
  EXPECT_TRUE(rule_applicable(g, 3, {}, NodeSet{C}, NodeSet{A}, {}));
}

TEST(Rules, RuleOneOnTheMutilatedGraph) {
  // 1 -> 2 -> 3: after do(2), 3 ⫫ 1 | 2 holds, so rule 1 applies.
  MixedGraph g(3);
  g.add_arrow(1, 2);
  g.add_arrow(2, 3);
  EXPECT_TRUE(rule_applicable(g, 1, NodeSet{2}, NodeSet{3}, NodeSet{1}, {}));
  EXPECT_FALSE(rule_applicable(g, 1, {}, NodeSet{3}, NodeSet{1}, {}));
}

TEST(Rules, DegenerateAndInvalidArguments) {
  const MixedGraph g = treatment_alt();
  for (int rule = 1; rule <= 3; ++rule) {
    EXPECT_TRUE(rule_applicable(g, rule, {}, {}, NodeSet{A}, {}));
    EXPECT_TRUE(rule_applicable(g, rule, {}, NodeSet{B}, {}, {}));
  }
  try {
    rule_applicable(g, 2, NodeSet{A}, NodeSet{A}, NodeSet{B}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OverlappingSets);
  }
  EXPECT_THROW(rule_applicable(g, 4, {}, NodeSet{B}, NodeSet{A}, {}), Error);
}

TEST(Derivation, TreatmentScript) {
  std::istringstream script("# p(B | do(A))\nrule 3 y=C z=A\nrule 2 x= y=B z=A w=C\n");
  const auto steps = parse_derivation(treatment_alt(), script);
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[1].w, NodeSet{C});
  EXPECT_TRUE(check_derivation(treatment_alt(), steps).success);

  const DerivationReport orig = check_derivation(treatment_orig(), steps);
  EXPECT_FALSE(orig.success);
  ASSERT_TRUE(orig.failed_step.has_value());
  EXPECT_EQ(*orig.failed_step, 1u);
  EXPECT_TRUE(check_derivation(treatment_alt(), {}).success);
}

TEST(Derivation, MalformedScripts) {
  for (const char* text : {"rule 4 y=B\n", "rul 1 y=B\n", "rule 1 q=B\n", "rule 1 y=B y=C\n",
                           "rule 1 y=Q\n", "rule\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(parse_derivation(treatment_alt(), in), Error) << text;
  }
}

}  // namespace
}  // namespace admg
