#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "admg/graph_io.hpp"
#include "admg/sem.hpp"
#include "admg/separation.hpp"
#include "oracles.hpp"

namespace admg {
namespace {

MixedGraph chain_line() {
  MixedGraph g(3);
  g.add_arrow(1, 2);
  g.add_arrow(2, 3);
  g.add_line(2, 3);
  return g;
}

// Recursive partial correlation: ρ_xy·(z ∪ w) from correlations given z.
double pcor_recursive(const Eigen::MatrixXd& s, int x, int y, std::vector<int> z) {
  if (z.empty()) return s(x, y) / std::sqrt(s(x, x) * s(y, y));
  const int w = z.back();
  z.pop_back();
  const double xy = pcor_recursive(s, x, y, z);
  const double xw = pcor_recursive(s, x, w, z);
  const double yw = pcor_recursive(s, y, w, z);
  return (xy - xw * yw) / std::sqrt((1 - xw * xw) * (1 - yw * yw));
}

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = normal(rng);
  return m * m.transpose() + Eigen::MatrixXd::Identity(n, n);
}

TEST(Magnify, SixNode) {
  MixedGraph g(6);
  g.set_names({"A", "B", "C", "D", "E", "F"});
  g.add_arrow(1, 2);
  g.add_arrow(1, 3);
  g.add_arrow(1, 4);
  g.add_arrow(2, 4);
  g.add_arrow(5, 6);
  g.add_line(3, 4);
  g.add_line(3, 5);
  g.add_line(4, 6);
  g.add_line(5, 6);
  const MixedGraph m = magnify(g);
  EXPECT_EQ(m.universe_size(), 12);
  EXPECT_EQ(m.arrow_count(), 5 + 6);
  EXPECT_EQ(m.line_count(), 4);
  for (NodeId v = 1; v <= 6; ++v) EXPECT_TRUE(m.has_arrow(error_node(6, v), v));
  EXPECT_TRUE(m.has_line(error_node(6, 3), error_node(6, 4)));
  EXPECT_FALSE(m.has_line(3, 4));
  EXPECT_EQ(m.label(error_node(6, 3)), "eps_C");
  EXPECT_NO_THROW(validate(m));
}

TEST(DeterminedClosure, ChainWithLine) {
  const MixedGraph m = magnify(chain_line());
  const NodeId eps_a = error_node(3, 1), eps_b = error_node(3, 2), eps_d = error_node(3, 3);
  // Given A and B, both their errors are fixed; D still depends on eps_D.
  EXPECT_EQ(determined_closure(m, NodeSet{1, 2}), (NodeSet{1, 2, eps_a, eps_b}));
  // B alone fixes nothing else: eps_B = B - beta A needs A.
  EXPECT_EQ(determined_closure(m, NodeSet{2}), (NodeSet{2}));
  EXPECT_EQ(determined_closure(m, NodeSet{}), NodeSet{});
  EXPECT_THROW(determined_closure(m, NodeSet{eps_d}), Error);
}

TEST(DeterminedClosure, ExtensiveMonotoneIdempotent) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const MixedGraph g = oracle::random_graph(4, Dialect::Alternative, rng);
    const MixedGraph m = magnify(g);
    for_each_subset(NodeSet::range(4), [&](NodeSet z) {
      const NodeSet dt = determined_closure(m, z);
      EXPECT_TRUE(dt.contains(z));
      EXPECT_EQ(determined_closure(m, dt & NodeSet::range(4)) | dt, dt);
      for (NodeId v : NodeSet::range(4) - z)
        EXPECT_TRUE(determined_closure(m, z | NodeSet::single(v)).contains(dt));
    });
  }
}

TEST(MagnifiedSeparation, MatchesOriginalOnThreeNodes) {
  for_each_graph(3, Dialect::Alternative, [](const MixedGraph& g) {
    const MixedGraph m = magnify(g);
    const Determination dt = [&](NodeSet z) { return determined_closure(m, z); };
    oracle::for_each_singleton_query(g, [&](const SeparationQuery& q) {
      ASSERT_EQ(separated(g, q, Criterion::Path), separated_with_determinism(m, q, dt))
          << serialize_graph(g) << to_string(q.z);
    });
  });
}

TEST(LinearSem, ImpliedCovarianceSolvesTheStructuralEquations) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const MixedGraph g = oracle::random_graph(5, Dialect::Alternative, rng);
    const LinearSem sem = random_sem(g, static_cast<std::uint64_t>(trial));
    const CovarianceMatrix sigma = implied_covariance(sem);
    const Eigen::MatrixXd i_b = Eigen::MatrixXd::Identity(5, 5) - sem.beta();
    EXPECT_LT((i_b * sigma * i_b.transpose() - sem.lambda()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((sigma - sigma.transpose()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(LinearSem, RandomSemRespectsGraphAndSeed) {
  const MixedGraph g = chain_line();
  const LinearSem a = random_sem(g, 7), b = random_sem(g, 7), c = random_sem(g, 8);
  EXPECT_EQ(a.beta(), b.beta());
  EXPECT_EQ(a.lambda(), b.lambda());
  EXPECT_NE(a.beta(), c.beta());
  for (auto [t, h] : g.arrows()) {
    EXPECT_GE(std::abs(a.coefficient(t, h)), 0.3);
    EXPECT_LE(std::abs(a.coefficient(t, h)), 1.0);
  }
  EXPECT_EQ(a.coefficient(1, 3), 0.0);
  const Eigen::MatrixXd precision = a.lambda().inverse();
  EXPECT_NEAR(precision(0, 1), 0.0, 1e-12);
  EXPECT_NEAR(precision(0, 2), 0.0, 1e-12);
  EXPECT_GT(std::abs(precision(1, 2)), 0.0);
}

TEST(LinearSem, RejectsBadParameters) {
  const MixedGraph g = chain_line();
  Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(3, 3);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  beta(2, 0) = 0.5;  // 1 -> 3 is not an arrow
  EXPECT_THROW(LinearSem(g, beta, id), Error);

  Eigen::MatrixXd lambda = id;
  lambda(0, 1) = lambda(1, 0) = 0.4;  // correlated errors without a line
  EXPECT_THROW(LinearSem(g, Eigen::MatrixXd::Zero(3, 3), lambda), Error);

  Eigen::MatrixXd indefinite = id;
  indefinite(1, 2) = indefinite(2, 1) = 2.0;
  EXPECT_THROW(LinearSem(g, Eigen::MatrixXd::Zero(3, 3), indefinite), Error);

  Eigen::MatrixXd asym = id;
  asym(1, 2) = 0.1;
  EXPECT_THROW(LinearSem(g, Eigen::MatrixXd::Zero(3, 3), asym), Error);

  MixedGraph orig(2);
  orig.add_biarrow(1, 2);
  EXPECT_THROW(random_sem(orig, 1), Error);
}

TEST(PartialCorrelation, MatchesRecursiveFormula) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::MatrixXd s = random_spd(5, rng);
    for_each_subset(NodeSet{3, 4, 5}, [&](NodeSet z) {
      std::vector<int> zi;
      for (NodeId v : z) zi.push_back(v - 1);
      EXPECT_NEAR(partial_correlation(s, 1, 2, z), pcor_recursive(s, 0, 1, zi), 1e-10);
    });
  }
}

TEST(PartialCorrelation, Errors) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_THROW(partial_correlation(id, 1, 1, {}), Error);
  EXPECT_THROW(partial_correlation(id, 1, 2, NodeSet{2}), Error);
  EXPECT_THROW(partial_correlation(id, 1, 4, {}), Error);
  Eigen::MatrixXd singular = Eigen::MatrixXd::Ones(3, 3);
  try {
    partial_correlation(singular, 1, 2, NodeSet{3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularSubmatrix);
  }
  EXPECT_NEAR(partial_correlation(id, 1, 2, {}), 0.0, 0.0);
}

TEST(GaussianMarkov, SeparationsVanish) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    const MixedGraph g = oracle::random_graph(3 + trial % 3, Dialect::Alternative, rng);
    const CovarianceMatrix sigma = implied_covariance(random_sem(g, static_cast<std::uint64_t>(trial)));
    oracle::for_each_singleton_query(g, [&](const SeparationQuery& q) {
      if (!separated(g, q, Criterion::Route)) return;
      EXPECT_LT(std::abs(partial_correlation(sigma, q.x.first(), q.y.first(), q.z)), 1e-7)
          << serialize_graph(g) << to_string(q.z);
    });
  }
}

TEST(GaussianMarkov, ColliderWithLineCreatesDependence) {
  // 1 -> 2 - 3: 1 and 3 are marginally independent, dependent given 2.
  MixedGraph g(3);
  g.add_arrow(1, 2);
  g.add_line(2, 3);
  const CovarianceMatrix sigma = implied_covariance(random_sem(g, 5));
  EXPECT_LT(std::abs(partial_correlation(sigma, 1, 3, {})), 1e-12);
  EXPECT_GT(std::abs(partial_correlation(sigma, 1, 3, NodeSet{2})), 1e-3);
  const CiOracle o = gaussian_oracle(sigma, 1e-7);
  EXPECT_TRUE(o(CiStatement{NodeSet{1}, NodeSet{3}, {}, 0}));
  EXPECT_FALSE(o(CiStatement{NodeSet{1}, NodeSet{3}, NodeSet{2}, 0}));
}

}  // namespace
}  // namespace admg
