#include "admg/markov.hpp"

#include <algorithm>
#include <set>

#include "admg/separation.hpp"

namespace admg {

std::string to_string(const CiStatement& s) {
  std::string out = to_string(s.x) + " _||_ " + to_string(s.y) + " | " + to_string(s.z);
  if (s.regime != 0) out += " || " + std::to_string(s.regime);
  return out;
}

void check_ordering(const OrderedContext& ctx) {
  const MixedGraph& g = ctx.graph;
  NodeSet seen;
  for (NodeId v : ctx.ordering) {
    if (!g.has_node(v) || seen.contains(v))
      throw Error(ErrorKind::InconsistentOrdering, "ordering is not a permutation of the nodes");
    // every parent of v must already be placed
    if (!seen.contains(g.parents(v)))
      throw Error(ErrorKind::InconsistentOrdering,
                  "node " + g.label(v) + " placed before one of its parents");
    seen.insert(v);
  }
  if (seen != g.nodes())
    throw Error(ErrorKind::InconsistentOrdering, "ordering does not cover every node");
}

NodeSet markov_blanket(const MixedGraph& g, NodeSet s, NodeId b) {
  if (!g.nodes().contains(s))
    throw Error(ErrorKind::NodeOutOfRange, "set " + to_string(s) + " outside graph");
  if (!s.contains(b))
    throw Error(ErrorKind::NodeNotInSet, "node " + std::to_string(b) + " not in " + to_string(s));
  const MixedGraph h = extended_subgraph(g, s);
  const NodeSet self = NodeSet::single(b);
  const NodeSet ch = relation(h, Relation::Ch, self);
  const NodeSet ne = relation(h, Relation::Ne, self | ch);
  const NodeSet pa = relation(h, Relation::Pa, self | ch | ne);
  return (ch | ne | pa) - self;
}

namespace {

// Calls fn(S) for every ancestral S ⊆ Pre(A) containing A, for each A.
template <typename Fn>
void for_each_ancestral_prefix_set(const OrderedContext& ctx, Fn&& fn) {
  const MixedGraph& g = ctx.graph;
  NodeSet pre;
  for (NodeId a : ctx.ordering) {
    for_each_subset(pre, [&](NodeSet rest) {
      const NodeSet s = rest | NodeSet::single(a);
      if (ancestors(g, s) == s) fn(s);
    });
    pre.insert(a);
  }
}

bool ug_connects(const MixedGraph& h, NodeSet x, NodeSet y, NodeSet z) {
  NodeSet reached = x;
  NodeSet frontier = x;
  while (!frontier.empty()) {
    NodeSet next;
    for (NodeId v : frontier) next |= h.neighbours(v);
    frontier = (next - z) - reached;
    reached |= frontier;
  }
  return reached.intersects(y);
}

void emit(std::set<CiStatement>& out, NodeSet x, NodeSet y, NodeSet z) {
  if (x.empty() || y.empty()) return;
  out.insert(CiStatement{x, y, z, 0});
}

}  // namespace

std::vector<CiStatement> ordered_local_statements(const OrderedContext& ctx) {
  check_ordering(ctx);
  std::set<CiStatement> out;
  for_each_ancestral_prefix_set(ctx, [&](NodeSet s) {
    for (NodeId b : s) {
      const NodeSet mb = markov_blanket(ctx.graph, s, b);
      if (s.contains(mb)) emit(out, NodeSet::single(b), s - NodeSet::single(b) - mb, mb);
    }
  });
  return {out.begin(), out.end()};
}

std::vector<CiStatement> ordered_pairwise_statements(const OrderedContext& ctx) {
  check_ordering(ctx);
  std::set<CiStatement> out;
  for_each_ancestral_prefix_set(ctx, [&](NodeSet s) {
    const MixedGraph h = extended_subgraph(ctx.graph, s);
    if (h.nodes() != s) return;
    const MixedGraph ha = augmented_graph(h);
    for (NodeId b : s)
      for (NodeId c : s) {
        if (b >= c || ha.has_line(b, c)) continue;
        const NodeSet pair{b, c};
        emit(out, NodeSet::single(b), NodeSet::single(c), h.nodes() - pair);
      }
  });
  return {out.begin(), out.end()};
}

namespace {

void block_recursive(const MixedGraph& g, NodeSet comp, std::set<CiStatement>& out) {
  for_each_subset(comp, [&](NodeSet d) {
    if (d.empty()) return;
    const NodeSet pa = relation(g, Relation::Pa, d);
    emit(out, d, relation(g, Relation::Nd, d) - pa, pa);
  });

  // Separations of the component's undirected graph, lifted by Pa(C).
  const MixedGraph gc = induced_subgraph(g, comp);
  const NodeSet pa_c = relation(g, Relation::Pa, comp);
  const std::vector<NodeId> members = comp.to_vector();
  const std::size_t k = members.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 4;
  for (std::size_t code = 0; code < total; ++code) {
    NodeSet x, y, z;
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i, c /= 4) {
      switch (c % 4) {
        case 1: x.insert(members[i]); break;
        case 2: y.insert(members[i]); break;
        case 3: z.insert(members[i]); break;
        default: break;
      }
    }
    if (x.empty() || y.empty() || y.first() < x.first()) continue;
    if (!ug_connects(gc, x, y, z)) emit(out, x, y, z | pa_c);
  }
}

void amp_local(const MixedGraph& g, NodeSet comp, std::set<CiStatement>& out) {
  const NodeSet nd = relation(g, Relation::Nd, comp);
  for (NodeId a : comp) {
    const NodeSet self = NodeSet::single(a);
    const NodeSet ne = g.neighbours(a);
    emit(out, self, comp - self - ne, nd | ne);
    for_each_subset(comp - self, [&](NodeSet s) {
      const NodeSet pa = relation(g, Relation::Pa, self | s);
      emit(out, self, nd - pa, s | pa);
    });
  }
}

void amp_pairwise(const MixedGraph& g, NodeSet comp, std::set<CiStatement>& out) {
  const NodeSet nd = relation(g, Relation::Nd, comp);
  for (NodeId a : comp) {
    const NodeSet self = NodeSet::single(a);
    for (NodeId b : comp - self - g.neighbours(a)) {
      const NodeSet other = NodeSet::single(b);
      emit(out, self, other, (nd | comp) - self - other);
    }
    for_each_subset(comp - self, [&](NodeSet s) {
      const NodeSet pa = relation(g, Relation::Pa, self | s);
      for (NodeId b : nd - pa) {
        const NodeSet other = NodeSet::single(b);
        emit(out, self, other, (s | nd) - other);
      }
    });
  }
}

}  // namespace

std::vector<CiStatement> amp_statements(const MixedGraph& g, AmpFlavor flavor) {
  if (!is_amp_cg(g)) throw Error(ErrorKind::NotAnAmpCg, "graph is not an AMP chain graph");
  std::set<CiStatement> out;
  for (NodeSet comp : connectivity_components(g)) {
    switch (flavor) {
      case AmpFlavor::BlockRecursive: block_recursive(g, comp, out); break;
      case AmpFlavor::Local: amp_local(g, comp, out); break;
      case AmpFlavor::Pairwise: amp_pairwise(g, comp, out); break;
    }
  }
  return {out.begin(), out.end()};
}

std::vector<CiStatement> verify_statements(const std::vector<CiStatement>& statements,
                                           const CiOracle& oracle) {
  std::vector<CiStatement> failing;
  for (const CiStatement& s : statements)
    if (!oracle(s)) failing.push_back(s);
  return failing;
}

CiOracle graphical_oracle(const MixedGraph& g) {
  return [g](const CiStatement& s) {
    return separated(g, SeparationQuery{s.x, s.y, s.z}, Criterion::Route);
  };
}

}  // namespace admg
