#include "admg/separation.hpp"

#include <array>
#include <optional>
#include <vector>

namespace admg {

void check_query(const MixedGraph& g, const SeparationQuery& q) {
  for (NodeSet s : {q.x, q.y, q.z})
    if (!g.nodes().contains(s))
      throw Error(ErrorKind::NodeOutOfRange, "query set " + to_string(s) + " outside graph");
  if (q.x.empty() || q.y.empty())
    throw Error(ErrorKind::MalformedQuery, "x and y must be non-empty");
  if (q.x.intersects(q.y) || q.x.intersects(q.z) || q.y.intersects(q.z))
    throw Error(ErrorKind::MalformedQuery, "x, y, z must be pairwise disjoint");
}

// ---------------------------------------------------------------------------
// Criterion 2: route automaton.

namespace {

class RouteSearch {
 public:
  RouteSearch(const MixedGraph& g, NodeSet z)
      : g_(g), z_(z), seen_(static_cast<std::size_t>(g.universe_size()) + 1) {}

  NodeSet reach_from(NodeSet sources) {
    for (NodeId s : sources) {
      if (z_.contains(s)) continue;
      for (NodeId w : g_.neighbours(s)) push(w, EndMark::Line);
      for (NodeId w : g_.children(s)) push(w, EndMark::Head);
      for (NodeId w : g_.spouses(s)) push(w, EndMark::Head);
      for (NodeId w : g_.parents(s)) push(w, EndMark::Tail);
    }
    while (!queue_.empty()) {
      WalkState st = queue_.back();
      queue_.pop_back();
      expand(st);
    }
    return reached_;
  }

 private:
  void push(NodeId v, EndMark mark) {
    auto& slot = seen_[v][static_cast<std::size_t>(mark)];
    if (slot) return;
    slot = true;
    reached_.insert(v);
    queue_.push_back({v, mark});
  }

  void expand(WalkState st) {
    const NodeId v = st.node;
    if (!z_.contains(v)) {
      // non-collider transitions
      switch (st.end_mark) {
        case EndMark::Line:
          for (NodeId w : g_.neighbours(v)) push(w, EndMark::Line);
          for (NodeId w : g_.children(v)) push(w, EndMark::Head);
          break;
        case EndMark::Tail:
          for (NodeId w : g_.neighbours(v)) push(w, EndMark::Line);
          for (NodeId w : g_.children(v)) push(w, EndMark::Head);
          for (NodeId w : g_.parents(v)) push(w, EndMark::Tail);
          for (NodeId w : g_.spouses(v)) push(w, EndMark::Head);
          break;
        case EndMark::Head:
          for (NodeId w : g_.children(v)) push(w, EndMark::Head);
          break;
      }
    } else {
      // collider transitions
      switch (st.end_mark) {
        case EndMark::Head:
          for (NodeId w : g_.neighbours(v)) push(w, EndMark::Line);
          for (NodeId w : g_.parents(v)) push(w, EndMark::Tail);
          for (NodeId w : g_.spouses(v)) push(w, EndMark::Head);
          break;
        case EndMark::Line:
          for (NodeId w : g_.parents(v)) push(w, EndMark::Tail);
          break;
        case EndMark::Tail:
          break;
      }
    }
  }

  const MixedGraph& g_;
  NodeSet z_;
  std::vector<std::array<bool, 3>> seen_;
  std::vector<WalkState> queue_;
  NodeSet reached_;
};

}  // namespace

bool connects_route(const MixedGraph& g, const SeparationQuery& q) {
  check_query(g, q);
  RouteSearch search(g, q.z);
  return search.reach_from(q.x).intersects(q.y);
}

// ---------------------------------------------------------------------------
// Criterion 1: simple path enumeration.

namespace {

// Edge end at the current node, seen from that node.
enum class End { Line, Head, Tail };

class PathSearch {
 public:
  PathSearch(const MixedGraph& g, NodeSet y, NodeSet cond)
      : g_(g), y_(y), cond_(cond), an_cond_(ancestors(g, cond & g.nodes())) {}

  bool from(NodeId source) { return dfs(source, std::nullopt, NodeSet::single(source)); }

 private:
  bool collider(End in, End out) const {
    return (in == End::Head && (out == End::Head || out == End::Line)) ||
           (out == End::Head && in == End::Line);
  }

  bool passes(NodeId v, End in, End out) const {
    if (collider(in, out)) return an_cond_.contains(v);
    if (!cond_.contains(v)) return true;
    return in == End::Line && out == End::Line && !(g_.parents(v) - cond_).empty();
  }

  bool step(NodeId v, std::optional<End> in, End out, NodeId w, End w_in, NodeSet visited) {
    if (visited.contains(w)) return false;
    if (in && !passes(v, *in, out)) return false;
    if (y_.contains(w)) return true;
    return dfs(w, w_in, visited | NodeSet::single(w));
  }

  bool dfs(NodeId v, std::optional<End> in, NodeSet visited) {
    for (NodeId w : g_.neighbours(v))
      if (step(v, in, End::Line, w, End::Line, visited)) return true;
    for (NodeId w : g_.children(v))
      if (step(v, in, End::Tail, w, End::Head, visited)) return true;
    for (NodeId w : g_.parents(v))
      if (step(v, in, End::Head, w, End::Tail, visited)) return true;
    return false;
  }

  const MixedGraph& g_;
  NodeSet y_;
  NodeSet cond_;
  NodeSet an_cond_;
};

bool path_connects(const MixedGraph& g, NodeSet x, NodeSet y, NodeSet cond) {
  PathSearch search(g, y, cond);
  for (NodeId s : x)
    if (search.from(s)) return true;
  return false;
}

void require_alternative(const MixedGraph& g, const char* what) {
  if (g.biarrow_count() > 0)
    throw Error(ErrorKind::UnsupportedDialect, std::string(what) + " does not support biarrows");
}

}  // namespace

bool connects_path(const MixedGraph& g, const SeparationQuery& q) {
  check_query(g, q);
  require_alternative(g, "criterion 1");
  return path_connects(g, q.x, q.y, q.z);
}

// ---------------------------------------------------------------------------
// Graph constructions for criteria 3 and 4.

MixedGraph extended_subgraph(const MixedGraph& g, NodeSet x) {
  require_alternative(g, "extended subgraph");
  const NodeSet an = ancestors(g, x);
  const NodeSet cc = relation(g, Relation::Cc, an);
  return graph_union(induced_subgraph(g, an), induced_subgraph(undirected_skeleton(g), cc));
}

MixedGraph marginal_extended_subgraph(const MixedGraph& g, NodeSet x) {
  require_alternative(g, "marginal extended subgraph");
  const NodeSet an = ancestors(g, x);
  const NodeSet cc = relation(g, Relation::Cc, an);
  return graph_union(induced_subgraph(g, an),
                     marginal_graph(induced_subgraph(undirected_skeleton(g), cc), an));
}

MixedGraph augmented_graph(const MixedGraph& g) {
  require_alternative(g, "augmented graph");
  MixedGraph out(g.universe_size(), g.nodes());
  out.set_names(g.names());
  auto join = [&](NodeId a, NodeId b) {
    if (a != b) out.add_line(a, b);
  };
  for (NodeId c : g.nodes()) {
    const NodeSet into = g.parents(c);
    // a -> c <- b and a -> c - b
    for (NodeId a : into)
      for (NodeId b : into | g.neighbours(c)) join(a, b);
    // a -> c - d <- b
    for (NodeId d : g.neighbours(c))
      for (NodeId a : into)
        for (NodeId b : g.parents(d)) join(a, b);
    // single edges
    for (NodeId b : g.children(c) | g.neighbours(c)) join(c, b);
  }
  return out;
}

MixedGraph marginal_graph(const MixedGraph& h, NodeSet x) {
  if (!h.nodes().contains(x))
    throw Error(ErrorKind::NodeOutOfRange, "marginal set " + to_string(x) + " outside graph");
  MixedGraph out(h.universe_size(), x);
  out.set_names(h.names());
  const NodeSet hidden = h.nodes() - x;
  for (NodeId a : x) {
    NodeSet touched = h.neighbours(a);
    NodeSet frontier = touched & hidden;
    NodeSet visited = frontier;
    while (!frontier.empty()) {
      NodeSet next;
      for (NodeId v : frontier) next |= h.neighbours(v);
      touched |= next;
      frontier = (next & hidden) - visited;
      visited |= frontier;
    }
    for (NodeId b : touched & x) {
      if (a < b) out.add_line(a, b);
    }
  }
  return out;
}

namespace {

// Vertex-cut reachability in an undirected graph: can x reach y avoiding z?
bool undirected_connects(const MixedGraph& h, NodeSet x, NodeSet y, NodeSet z) {
  NodeSet reached = x - z;
  NodeSet frontier = reached;
  while (!frontier.empty()) {
    NodeSet next;
    for (NodeId v : frontier) next |= h.neighbours(v);
    next = next - z;
    frontier = next - reached;
    reached |= frontier;
  }
  return reached.intersects(y);
}

}  // namespace

bool separated(const MixedGraph& g, const SeparationQuery& q, Criterion criterion) {
  check_query(g, q);
  const NodeSet all = q.x | q.y | q.z;
  switch (criterion) {
    case Criterion::Path:
      return !connects_path(g, q);
    case Criterion::Route:
      return !connects_route(g, q);
    case Criterion::Augmented:
      return !undirected_connects(augmented_graph(extended_subgraph(g, all)), q.x, q.y, q.z);
    case Criterion::MarginalAugmented:
      return !undirected_connects(augmented_graph(marginal_extended_subgraph(g, all)), q.x, q.y,
                                  q.z);
  }
  throw Error(ErrorKind::MalformedQuery, "unknown criterion");
}

bool separated_with_determinism(const MixedGraph& g, const SeparationQuery& q,
                                const Determination& det) {
  check_query(g, q);
  require_alternative(g, "criterion 1");
  const NodeSet closed = det(q.z);
  if (!closed.contains(q.z))
    throw Error(ErrorKind::MalformedQuery, "determination closure must contain z");
  return !path_connects(g, q.x, q.y, closed);
}

}  // namespace admg
