#include "admg/sem.hpp"

#include <cmath>
#include <random>

namespace admg {

MixedGraph magnify(const MixedGraph& g) {
  if (g.biarrow_count() > 0)
    throw Error(ErrorKind::UnsupportedDialect, "magnification needs an alternative graph");
  const int n = g.universe_size();
  if (2 * n > kMaxNodes)
    throw Error(ErrorKind::NodeOutOfRange, "magnified graph exceeds " + std::to_string(kMaxNodes) +
                                               " nodes");
  NodeSet nodes = g.nodes();
  for (NodeId v : g.nodes()) nodes.insert(error_node(n, v));
  MixedGraph out(2 * n, nodes);
  if (!g.names().empty()) {
    std::vector<std::string> names = g.names();
    for (int v = 1; v <= n; ++v) names.push_back("eps_" + g.label(v));
    out.set_names(std::move(names));
  }
  for (auto [t, h] : g.arrows()) out.add_arrow(t, h);
  for (NodeId v : g.nodes()) out.add_arrow(error_node(n, v), v);
  for (auto [a, b] : g.lines()) out.add_line(error_node(n, a), error_node(n, b));
  return out;
}

NodeSet determined_closure(const MixedGraph& magnified, NodeSet z) {
  const int n = magnified.universe_size() / 2;
  if (z.intersects(NodeSet::range(2 * n) - NodeSet::range(n)))
    throw Error(ErrorKind::ErrorNodeInZ, "conditioning set contains error nodes");
  if (!magnified.nodes().contains(z))
    throw Error(ErrorKind::NodeOutOfRange, "set " + to_string(z) + " outside graph");

  NodeSet dt = z;
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId a : magnified.nodes() & NodeSet::range(n)) {
      const NodeId eps = error_node(n, a);
      const NodeSet pa = magnified.parents(a);
      if (!dt.contains(a) && dt.contains(pa)) {
        dt.insert(a);
        changed = true;
      }
      if (!dt.contains(eps) && dt.contains(a) && dt.contains(pa - NodeSet::single(eps))) {
        dt.insert(eps);
        changed = true;
      }
    }
  }
  return dt;
}

LinearSem::LinearSem(MixedGraph graph, Eigen::MatrixXd beta, Eigen::MatrixXd lambda)
    : graph_(std::move(graph)), beta_(std::move(beta)), lambda_(std::move(lambda)) {
  constexpr double kTol = 1e-9;
  const int n = graph_.universe_size();
  if (graph_.nodes() != NodeSet::range(n))
    throw Error(ErrorKind::InvalidSem, "graph must span its whole universe");
  if (graph_.biarrow_count() > 0)
    throw Error(ErrorKind::UnsupportedDialect, "linear SEM needs an alternative graph");
  if (beta_.rows() != n || beta_.cols() != n || lambda_.rows() != n || lambda_.cols() != n)
    throw Error(ErrorKind::InvalidSem, "matrix dimensions do not match the graph");

  for (int h = 1; h <= n; ++h)
    for (int t = 1; t <= n; ++t)
      if (beta_(h - 1, t - 1) != 0.0 && !graph_.has_arrow(t, h))
        throw Error(ErrorKind::InvalidSem, "coefficient on missing arrow " + std::to_string(t) +
                                               " -> " + std::to_string(h));

  if (n == 0) return;
  if ((lambda_ - lambda_.transpose()).cwiseAbs().maxCoeff() > kTol)
    throw Error(ErrorKind::InvalidSem, "error covariance is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(lambda_);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidSem, "error covariance is not positive definite");

  const Eigen::MatrixXd precision = lambda_.inverse();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!graph_.has_line(a, b) && std::abs(precision(a - 1, b - 1)) > kTol)
        throw Error(ErrorKind::InvalidSem, "error precision is non-zero between unlinked nodes " +
                                               std::to_string(a) + " and " + std::to_string(b));
}

CovarianceMatrix implied_covariance(const LinearSem& sem) {
  const Eigen::Index n = sem.beta().rows();
  const Eigen::MatrixXd delta =
      (Eigen::MatrixXd::Identity(n, n) - sem.beta()).inverse();
  CovarianceMatrix sigma = delta * sem.lambda() * delta.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

LinearSem random_sem(const MixedGraph& g, std::uint64_t seed) {
  validate(g);
  const int n = g.universe_size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(0.3, 1.0);
  std::bernoulli_distribution negative(0.5);
  std::uniform_real_distribution<double> off_diagonal(-0.3, 0.3);

  Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(n, n);
  for (auto [t, h] : g.arrows()) {
    const double m = magnitude(rng);
    beta(h - 1, t - 1) = negative(rng) ? -m : m;
  }

  Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(n, n);
  for (auto [a, b] : g.lines()) {
    const double w = off_diagonal(rng);
    precision(a - 1, b - 1) = w;
    precision(b - 1, a - 1) = w;
  }
  for (int i = 0; i < n; ++i) precision(i, i) = precision.row(i).cwiseAbs().sum() + 1.0;

  Eigen::MatrixXd lambda = precision.inverse();
  lambda = 0.5 * (lambda + lambda.transpose());
  return LinearSem(g, std::move(beta), std::move(lambda));
}

double partial_correlation(const CovarianceMatrix& sigma, NodeId x, NodeId y, NodeSet z) {
  const auto n = static_cast<int>(sigma.rows());
  if (x == y || z.contains(x) || z.contains(y))
    throw Error(ErrorKind::MalformedQuery, "x, y and z must be disjoint");
  if (x < 1 || x > n || y < 1 || y > n || !NodeSet::range(n).contains(z))
    throw Error(ErrorKind::NodeOutOfRange, "ci test index outside covariance matrix");

  std::vector<int> idx{x - 1, y - 1};
  for (NodeId v : z) idx.push_back(v - 1);
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = sigma(idx[i], idx[j]);

  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::SingularSubmatrix, "submatrix is not positive definite");
  const Eigen::MatrixXd p = llt.solve(Eigen::MatrixXd::Identity(k, k));
  const double denom = std::sqrt(p(0, 0) * p(1, 1));
  if (!std::isfinite(denom) || denom <= 0.0)
    throw Error(ErrorKind::SingularSubmatrix, "degenerate precision diagonal");
  return -p(0, 1) / denom;
}

bool ci_test(const CovarianceMatrix& sigma, NodeId x, NodeId y, NodeSet z, double tol) {
  return std::abs(partial_correlation(sigma, x, y, z)) < tol;
}

CiOracle gaussian_oracle(CovarianceMatrix sigma, double tol) {
  return [sigma = std::move(sigma), tol](const CiStatement& s) {
    for (NodeId a : s.x)
      for (NodeId b : s.y)
        if (!ci_test(sigma, a, b, s.z, tol)) return false;
    return true;
  };
}

}  // namespace admg
