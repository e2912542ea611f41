#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "admg/graph.hpp"
#include "admg/markov.hpp"

namespace admg {

/// Covariance over the observed nodes; row/column i-1 is node i.
using CovarianceMatrix = Eigen::MatrixXd;

/// Error node of v in a magnified graph over n observed nodes.
constexpr NodeId error_node(int n, NodeId v) { return n + v; }

/// Makes the error terms explicit: adds ε_A -> A for every node A (ε_A is
/// node n + A) and replaces every line A - B by ε_A - ε_B. Arrows are kept.
MixedGraph magnify(const MixedGraph& g);

/// Least fixpoint of: z ⊆ Dt; A ∈ Dt when Pa(A) ⊆ Dt; ε_A ∈ Dt when A ∈ Dt
/// and Pa(A) \ ε_A ⊆ Dt. `magnified` must come from `magnify`; z may only
/// contain observed nodes (ErrorNodeInZ otherwise).
NodeSet determined_closure(const MixedGraph& magnified, NodeSet z);

/// Linear structural equations with correlated errors:
///   A = Σ_{P ∈ Pa(A)} β(A, P) P + ε_A,   ε ~ N(0, Λ),
/// with (Λ^-1)(ε_A, ε_B) = 0 unless A - B is a line of the graph.
class LinearSem {
 public:
  /// `beta(h-1, t-1)` is the coefficient of t in the equation of h; it must be
  /// zero unless t -> h is an arrow. Throws InvalidSem when Λ is not symmetric
  /// positive definite or its inverse violates the zero pattern (tol 1e-9).
  LinearSem(MixedGraph graph, Eigen::MatrixXd beta, Eigen::MatrixXd lambda);

  const MixedGraph& graph() const { return graph_; }
  const Eigen::MatrixXd& beta() const { return beta_; }
  const Eigen::MatrixXd& lambda() const { return lambda_; }
  double coefficient(NodeId tail, NodeId head) const { return beta_(head - 1, tail - 1); }

 private:
  MixedGraph graph_;
  Eigen::MatrixXd beta_;
  Eigen::MatrixXd lambda_;
};

/// Σ = δ Λ δᵀ with δ = (I - β)^-1.
CovarianceMatrix implied_covariance(const LinearSem& sem);

/// Deterministic in (g, seed). Coefficients have magnitude in [0.3, 1.0] and a
/// random sign. The error precision has off-diagonals in [-0.3, 0.3] on line
/// pairs, zeros elsewhere, and a diagonal of (row absolute sum + 1).
LinearSem random_sem(const MixedGraph& g, std::uint64_t seed);

/// Partial correlation of x and y given z, from the inverse of the (x, y, z)
/// principal submatrix. Throws SingularSubmatrix on a degenerate submatrix.
double partial_correlation(const CovarianceMatrix& sigma, NodeId x, NodeId y, NodeSet z);

/// |partial correlation| < tol.
bool ci_test(const CovarianceMatrix& sigma, NodeId x, NodeId y, NodeSet z, double tol);

/// Set-valued statements hold iff every (x_i, y_j) pair is independent given z.
CiOracle gaussian_oracle(CovarianceMatrix sigma, double tol);

}  // namespace admg
