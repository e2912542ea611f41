#pragma once

#include <functional>

#include "admg/graph.hpp"

namespace admg {

/// x ⫫ y | z. Requires x, y, z pairwise disjoint and x, y non-empty.
struct SeparationQuery {
  NodeSet x;
  NodeSet y;
  NodeSet z;
};

/// Throws MalformedQuery / NodeOutOfRange when q does not fit g.
void check_query(const MixedGraph& g, const SeparationQuery& q);

/// How a walk arrives at a node: via a line, via an arrowhead into the node,
/// or via the tail of an arrow leaving the node (walked against the arrow).
enum class EndMark : unsigned char { Line = 0, Head = 1, Tail = 2 };

struct WalkState {
  NodeId node;
  EndMark end_mark;
};

/// Route-based connection (criterion 2), computed as the least fixpoint of
/// the end_line / end_head / end_tail reachability rules. Handles biarrows
/// (an arrival over a biarrow is a Head arrival). O(n) states per query.
bool connects_route(const MixedGraph& g, const SeparationQuery& q);

/// Path-based connection (criterion 1) by exhaustive enumeration of simple
/// paths. Colliders must lie in An(z); non-colliders must lie outside z
/// unless the path passes A - C - B with Pa(C) \ z non-empty. Exponential;
/// meant for small graphs and as an oracle.
bool connects_path(const MixedGraph& g, const SeparationQuery& q);

/// G[X] = G_{An(X)} ∪ (G^u)_{Cc(An(X))}. Alternative dialect only.
MixedGraph extended_subgraph(const MixedGraph& g, NodeSet x);

/// G[X]^m = G_{An(X)} ∪ ((G^u)_{Cc(An(X))})^{An(X)}. Alternative dialect only.
MixedGraph marginal_extended_subgraph(const MixedGraph& g, NodeSet x);

/// G^a: an undirected graph joining every collider-connected pair. Same
/// vertex set as g.
MixedGraph augmented_graph(const MixedGraph& g);

/// H^X for an undirected h: A - B iff adjacent in h, or joined by a line path
/// whose interior avoids x. Vertex set x.
MixedGraph marginal_graph(const MixedGraph& h, NodeSet x);

enum class Criterion { Path = 1, Route = 2, Augmented = 3, MarginalAugmented = 4 };

/// True iff q.x and q.y are separated given q.z under the chosen criterion.
/// Criteria 1, 3 and 4 reject graphs with biarrows (UnsupportedDialect).
bool separated(const MixedGraph& g, const SeparationQuery& q, Criterion criterion);

/// Criterion 1 with z replaced by det(z): colliders must be in An(det(z)),
/// non-colliders outside det(z) except through the line escape clause.
/// `det` must be extensive and monotone.
using Determination = std::function<NodeSet(NodeSet)>;
bool separated_with_determinism(const MixedGraph& g, const SeparationQuery& q,
                                const Determination& det);

}  // namespace admg
