#pragma once

#include <functional>
#include <string>
#include <vector>

#include "admg/graph.hpp"

namespace admg {

/// x ⫫ y | z, optionally under an intervention regime (0 = observational).
struct CiStatement {
  NodeSet x;
  NodeSet y;
  NodeSet z;
  NodeId regime = 0;

  auto operator<=>(const CiStatement&) const = default;
  bool operator==(const CiStatement&) const = default;
};

std::string to_string(const CiStatement& s);

/// A graph together with a total order consistent with its arrows
/// (A before B implies B is not an ancestor of A).
struct OrderedContext {
  MixedGraph graph;
  std::vector<NodeId> ordering;
};

/// Throws InconsistentOrdering unless ctx.ordering is a permutation of the
/// graph's nodes consistent with its arrows.
void check_ordering(const OrderedContext& ctx);

/// Mb_{G[S]}(b) = Ch(b) ∪ Ne(b ∪ Ch(b)) ∪ Pa(b ∪ Ch(b) ∪ Ne(b ∪ Ch(b))), all
/// taken in the extended subgraph G[S], without b itself.
NodeSet markov_blanket(const MixedGraph& g, NodeSet s, NodeId b);

/// Ordered local property over ancestral sets S ⊆ Pre(A) with A ∈ S:
/// B ⫫ S \ (B ∪ Mb) | Mb for every B ∈ S. Vacuous statements are skipped.
/// Sorted, duplicate-free.
///
/// A statement is emitted only when Mb ⊆ S. When the blanket reaches a node
/// outside S through a line component, conditioning on it brings its parents
/// back into play and the statement can fail: for A -> C - E with S = {A, E},
/// Mb(E) = {C} but A and E are connected given C.
std::vector<CiStatement> ordered_local_statements(const OrderedContext& ctx);

/// Ordered pairwise property over the same sets: B ⫫ C | V(G[S]) \ {B, C}
/// for B, C ∈ S non-adjacent in G[S]^a. Emitted only for sets with
/// V(G[S]) = S, for the same reason as above.
std::vector<CiStatement> ordered_pairwise_statements(const OrderedContext& ctx);

enum class AmpFlavor { BlockRecursive, Local, Pairwise };

/// Statement sets of the AMP chain graph properties, per connectivity
/// component C:
///  - BlockRecursive: D ⫫ Nd(D) \ Pa(D) | Pa(D) for all D ⊆ C, plus
///    X ⫫ Y | Z ∪ Pa(C) for every separation X ⫫ Y | Z of G_C;
///  - Local: A ⫫ C \ (A ∪ Ne(A)) | Nd(C) ∪ Ne(A) and
///    A ⫫ Nd(C) \ Pa(A ∪ S) | S ∪ Pa(A ∪ S) for S ⊆ C \ A;
///  - Pairwise: A ⫫ B | Nd(C) ∪ C \ (A ∪ B) for B ∈ C \ (A ∪ Ne(A)), and
///    A ⫫ B | S ∪ Nd(C) \ B for B ∈ Nd(C) \ Pa(A ∪ S), S ⊆ C \ A.
/// Throws NotAnAmpCg.
std::vector<CiStatement> amp_statements(const MixedGraph& g, AmpFlavor flavor);

using CiOracle = std::function<bool(const CiStatement&)>;

/// Statements the oracle rejects, in input order.
std::vector<CiStatement> verify_statements(const std::vector<CiStatement>& statements,
                                           const CiOracle& oracle);

/// Oracle backed by the route-separation engine on g.
CiOracle graphical_oracle(const MixedGraph& g);

}  // namespace admg
