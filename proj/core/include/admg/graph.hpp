#pragma once

#include <string>
#include <utility>
#include <vector>

#include "admg/error.hpp"
#include "admg/node_set.hpp"

namespace admg {

using Edge = std::pair<NodeId, NodeId>;

/// Alternative graphs carry lines (undirected edges); Original graphs carry
/// biarrows. Arrows are common to both.
enum class Dialect { Alternative, Original };

/// A mixed graph over the universe {1..n}. Three edge kinds are stored as
/// per-node bitmasks: arrows (tail -> head), lines (tail - head) and
/// biarrows (tail <-> head). `nodes()` is the vertex set, which may be a
/// strict subset of the universe for induced or derived subgraphs.
///
/// The type can hold invalid graphs so that `validate` has something to
/// reject; every other operation in the library assumes a valid graph.
class MixedGraph {
 public:
  MixedGraph() = default;
  explicit MixedGraph(int n);
  MixedGraph(int n, NodeSet nodes);

  int universe_size() const { return n_; }
  NodeSet nodes() const { return nodes_; }
  bool has_node(NodeId v) const { return v >= 1 && v <= n_ && nodes_.contains(v); }

  void add_arrow(NodeId tail, NodeId head);
  void add_line(NodeId a, NodeId b);
  void add_biarrow(NodeId a, NodeId b);
  void remove_arrow(NodeId tail, NodeId head);
  void remove_line(NodeId a, NodeId b);
  void remove_biarrow(NodeId a, NodeId b);

  bool has_arrow(NodeId tail, NodeId head) const { return children_[idx(tail)].contains(head); }
  bool has_line(NodeId a, NodeId b) const { return neighbours_[idx(a)].contains(b); }
  bool has_biarrow(NodeId a, NodeId b) const { return spouses_[idx(a)].contains(b); }
  bool adjacent(NodeId a, NodeId b) const;

  NodeSet parents(NodeId v) const { return parents_[idx(v)]; }
  NodeSet children(NodeId v) const { return children_[idx(v)]; }
  NodeSet neighbours(NodeId v) const { return neighbours_[idx(v)]; }
  NodeSet spouses(NodeId v) const { return spouses_[idx(v)]; }

  /// Sorted by (tail, head).
  std::vector<Edge> arrows() const;
  /// Sorted by (min, max); each unordered edge appears once as (min, max).
  std::vector<Edge> lines() const;
  std::vector<Edge> biarrows() const;
  int arrow_count() const;
  int line_count() const;
  int biarrow_count() const;
  bool empty_edges() const { return arrow_count() + line_count() + biarrow_count() == 0; }

  /// Presentation labels, indexed by node id - 1. Empty when unlabelled.
  const std::vector<std::string>& names() const { return names_; }
  void set_names(std::vector<std::string> names);
  /// Label of v, or its decimal index when unlabelled.
  std::string label(NodeId v) const;

  /// Structural equality: universe, vertex set and edges. Labels are ignored.
  bool operator==(const MixedGraph& other) const;

 private:
  std::size_t idx(NodeId v) const { return static_cast<std::size_t>(v - 1); }
  void check_endpoints(NodeId a, NodeId b) const;

  int n_ = 0;
  NodeSet nodes_;
  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
  std::vector<NodeSet> neighbours_;
  std::vector<NodeSet> spouses_;
  std::vector<std::string> names_;
};

/// Throws Error on the first violated invariant: SelfEdge, DoubleArrow,
/// DoubleEdgeBothDirectedOrSame, LineBiarrowMix, DirectedCycle (with the
/// cycle as witness).
void validate(const MixedGraph& g);

/// Original when the graph has biarrows, Alternative otherwise.
Dialect dialect_of(const MixedGraph& g);

enum class Relation {
  Pa,  ///< parents
  Ch,  ///< children
  Ne,  ///< neighbours (lines)
  An,  ///< ancestors, reflexive
  De,  ///< descendants, reflexive
  de,  ///< semidescendants (forward arrows and lines), reflexive
  Nd,  ///< non-semidescendants: V \ de
  Cc,  ///< connectivity component over lines, reflexive
};

NodeSet relation(const MixedGraph& g, Relation kind, NodeSet x);

// Shorthands for the common relations.
inline NodeSet parents(const MixedGraph& g, NodeSet x) { return relation(g, Relation::Pa, x); }
inline NodeSet ancestors(const MixedGraph& g, NodeSet x) { return relation(g, Relation::An, x); }

/// Partition of nodes(g) by line connectivity, ordered by smallest member.
std::vector<NodeSet> connectivity_components(const MixedGraph& g);

/// G_X: the edges of g with both ends in x, over vertex set x.
MixedGraph induced_subgraph(const MixedGraph& g, NodeSet x);

/// G^u: same vertex set, lines only.
MixedGraph undirected_skeleton(const MixedGraph& g);

/// Topological order over arrows with lowest-index-first tie-breaking.
std::vector<NodeId> consistent_ordering(const MixedGraph& g);

/// True iff g is an AMP chain graph: single edges per pair, no biarrows and
/// no semidirected cycle.
bool is_amp_cg(const MixedGraph& g);

/// Union of two graphs over the same universe: vertex sets and edges.
MixedGraph graph_union(const MixedGraph& a, const MixedGraph& b);

/// Calls fn(g) for every valid graph over n nodes in the given dialect.
/// Each unordered pair takes one of six states: {no line/biarrow, line/biarrow}
/// x {no arrow, i->j, j->i}; graphs with directed cycles are skipped.
template <typename Fn>
void for_each_graph(int n, Dialect dialect, Fn&& fn);

}  // namespace admg

#include "admg/detail/enumerate.hpp"
