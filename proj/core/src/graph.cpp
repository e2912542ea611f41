#include "admg/graph.hpp"

#include <algorithm>
#include <sstream>

namespace admg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SelfEdge: return "SelfEdge";
    case ErrorKind::DirectedCycle: return "DirectedCycle";
    case ErrorKind::DoubleArrow: return "DoubleArrow";
    case ErrorKind::LineBiarrowMix: return "LineBiarrowMix";
    case ErrorKind::DoubleEdgeBothDirectedOrSame: return "DoubleEdgeBothDirectedOrSame";
    case ErrorKind::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorKind::MalformedQuery: return "MalformedQuery";
    case ErrorKind::UnsupportedDialect: return "UnsupportedDialect";
    case ErrorKind::InconsistentOrdering: return "InconsistentOrdering";
    case ErrorKind::NodeNotInSet: return "NodeNotInSet";
    case ErrorKind::NotAnAmpCg: return "NotAnAmpCg";
    case ErrorKind::ErrorNodeInZ: return "ErrorNodeInZ";
    case ErrorKind::SingularSubmatrix: return "SingularSubmatrix";
    case ErrorKind::InvalidSem: return "InvalidSem";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::MalformedScript: return "MalformedScript";
    case ErrorKind::ProblemTooLarge: return "ProblemTooLarge";
    case ErrorKind::NoFeasibleModel: return "NoFeasibleModel";
    case ErrorKind::InvalidProblem: return "InvalidProblem";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::string to_string(NodeSet s) {
  std::string out = "{";
  bool first = true;
  for (NodeId v : s) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

MixedGraph::MixedGraph(int n) : MixedGraph(n, NodeSet::range(n)) {}

MixedGraph::MixedGraph(int n, NodeSet nodes)
    : n_(n),
      nodes_(nodes),
      parents_(static_cast<std::size_t>(n)),
      children_(static_cast<std::size_t>(n)),
      neighbours_(static_cast<std::size_t>(n)),
      spouses_(static_cast<std::size_t>(n)) {
  if (n < 0 || n > kMaxNodes)
    throw Error(ErrorKind::NodeOutOfRange, "node count " + std::to_string(n) + " outside 0.." +
                                               std::to_string(kMaxNodes));
  if (!NodeSet::range(n).contains(nodes))
    throw Error(ErrorKind::NodeOutOfRange, "vertex set exceeds universe");
}

void MixedGraph::check_endpoints(NodeId a, NodeId b) const {
  if (!has_node(a) || !has_node(b)) {
    std::ostringstream msg;
    msg << "edge " << a << "," << b << " has an endpoint outside the graph";
    throw Error(ErrorKind::NodeOutOfRange, msg.str());
  }
}

void MixedGraph::add_arrow(NodeId tail, NodeId head) {
  check_endpoints(tail, head);
  children_[idx(tail)].insert(head);
  parents_[idx(head)].insert(tail);
}

void MixedGraph::add_line(NodeId a, NodeId b) {
  check_endpoints(a, b);
  neighbours_[idx(a)].insert(b);
  neighbours_[idx(b)].insert(a);
}

void MixedGraph::add_biarrow(NodeId a, NodeId b) {
  check_endpoints(a, b);
  spouses_[idx(a)].insert(b);
  spouses_[idx(b)].insert(a);
}

void MixedGraph::remove_arrow(NodeId tail, NodeId head) {
  check_endpoints(tail, head);
  children_[idx(tail)].erase(head);
  parents_[idx(head)].erase(tail);
}

void MixedGraph::remove_line(NodeId a, NodeId b) {
  check_endpoints(a, b);
  neighbours_[idx(a)].erase(b);
  neighbours_[idx(b)].erase(a);
}

void MixedGraph::remove_biarrow(NodeId a, NodeId b) {
  check_endpoints(a, b);
  spouses_[idx(a)].erase(b);
  spouses_[idx(b)].erase(a);
}

bool MixedGraph::adjacent(NodeId a, NodeId b) const {
  const NodeSet around = parents(a) | children(a) | neighbours(a) | spouses(a);
  return around.contains(b);
}

std::vector<Edge> MixedGraph::arrows() const {
  std::vector<Edge> out;
  for (NodeId t : nodes_)
    for (NodeId h : children(t)) out.emplace_back(t, h);
  return out;
}

std::vector<Edge> MixedGraph::lines() const {
  std::vector<Edge> out;
  for (NodeId a : nodes_)
    for (NodeId b : neighbours(a))
      if (a <= b) out.emplace_back(a, b);
  return out;
}

std::vector<Edge> MixedGraph::biarrows() const {
  std::vector<Edge> out;
  for (NodeId a : nodes_)
    for (NodeId b : spouses(a))
      if (a <= b) out.emplace_back(a, b);
  return out;
}

int MixedGraph::arrow_count() const {
  int c = 0;
  for (const NodeSet& s : children_) c += s.size();
  return c;
}

int MixedGraph::line_count() const {
  int c = 0;
  for (NodeId a : nodes_) c += neighbours(a).size() + (has_line(a, a) ? 1 : 0);
  return c / 2;
}

int MixedGraph::biarrow_count() const {
  int c = 0;
  for (NodeId a : nodes_) c += spouses(a).size() + (has_biarrow(a, a) ? 1 : 0);
  return c / 2;
}

void MixedGraph::set_names(std::vector<std::string> names) {
  if (!names.empty() && names.size() != static_cast<std::size_t>(n_))
    throw Error(ErrorKind::Parse, "expected " + std::to_string(n_) + " node names, got " +
                                      std::to_string(names.size()));
  names_ = std::move(names);
}

std::string MixedGraph::label(NodeId v) const {
  if (!names_.empty() && v >= 1 && v <= n_) return names_[idx(v)];
  return std::to_string(v);
}

bool MixedGraph::operator==(const MixedGraph& other) const {
  return n_ == other.n_ && nodes_ == other.nodes_ && children_ == other.children_ &&
         neighbours_ == other.neighbours_ && spouses_ == other.spouses_;
}

namespace {

// Returns a directed cycle as a node sequence (first node repeated at the
// end), or an empty vector when the arrows are acyclic.
std::vector<NodeId> find_directed_cycle(const MixedGraph& g) {
  enum Color { White, Grey, Black };
  std::vector<Color> color(static_cast<std::size_t>(g.universe_size()) + 1, White);
  std::vector<NodeId> stack;
  std::vector<NodeId> cycle;

  auto dfs = [&](auto&& self, NodeId v) -> bool {
    color[v] = Grey;
    stack.push_back(v);
    for (NodeId c : g.children(v)) {
      if (color[c] == Grey) {
        auto it = std::find(stack.begin(), stack.end(), c);
        cycle.assign(it, stack.end());
        cycle.push_back(c);
        return true;
      }
      if (color[c] == White && self(self, c)) return true;
    }
    stack.pop_back();
    color[v] = Black;
    return false;
  };

  for (NodeId v : g.nodes())
    if (color[v] == White && dfs(dfs, v)) return cycle;
  return {};
}

}  // namespace

void validate(const MixedGraph& g) {
  for (NodeId v : g.nodes()) {
    if (g.has_arrow(v, v) || g.has_line(v, v) || g.has_biarrow(v, v))
      throw Error(ErrorKind::SelfEdge, "self edge at node " + g.label(v), {v});
  }
  for (auto [t, h] : g.arrows()) {
    if (g.has_arrow(h, t))
      throw Error(ErrorKind::DoubleArrow,
                  "arrows in both directions between " + g.label(t) + " and " + g.label(h),
                  {std::min(t, h), std::max(t, h)});
  }
  if (g.line_count() > 0 && g.biarrow_count() > 0) {
    for (auto [a, b] : g.lines())
      if (g.has_biarrow(a, b))
        throw Error(ErrorKind::DoubleEdgeBothDirectedOrSame,
                    "line and biarrow on the same pair " + g.label(a) + "," + g.label(b), {a, b});
    throw Error(ErrorKind::LineBiarrowMix, "graph mixes lines and biarrows");
  }
  if (auto cycle = find_directed_cycle(g); !cycle.empty()) {
    std::string text;
    for (std::size_t i = 0; i < cycle.size(); ++i) text += (i ? " -> " : "") + g.label(cycle[i]);
    throw Error(ErrorKind::DirectedCycle, "directed cycle " + text, std::move(cycle));
  }
}

Dialect dialect_of(const MixedGraph& g) {
  return g.biarrow_count() > 0 ? Dialect::Original : Dialect::Alternative;
}

namespace {

template <typename Step>
NodeSet closure(NodeSet start, Step&& step) {
  NodeSet reached = start;
  NodeSet frontier = start;
  while (!frontier.empty()) {
    NodeSet next;
    for (NodeId v : frontier) next |= step(v);
    frontier = next - reached;
    reached |= frontier;
  }
  return reached;
}

void check_subset(const MixedGraph& g, NodeSet x) {
  if (!g.nodes().contains(x))
    throw Error(ErrorKind::NodeOutOfRange, "node set " + to_string(x) + " not within graph nodes " +
                                               to_string(g.nodes()));
}

}  // namespace

NodeSet relation(const MixedGraph& g, Relation kind, NodeSet x) {
  check_subset(g, x);
  NodeSet out;
  switch (kind) {
    case Relation::Pa:
      for (NodeId v : x) out |= g.parents(v);
      return out;
    case Relation::Ch:
      for (NodeId v : x) out |= g.children(v);
      return out;
    case Relation::Ne:
      for (NodeId v : x) out |= g.neighbours(v);
      return out;
    case Relation::An:
      return closure(x, [&](NodeId v) { return g.parents(v); });
    case Relation::De:
      return closure(x, [&](NodeId v) { return g.children(v); });
    case Relation::de:
      return closure(x, [&](NodeId v) { return g.children(v) | g.neighbours(v); });
    case Relation::Nd:
      return g.nodes() - relation(g, Relation::de, x);
    case Relation::Cc:
      return closure(x, [&](NodeId v) { return g.neighbours(v); });
  }
  return out;
}

std::vector<NodeSet> connectivity_components(const MixedGraph& g) {
  std::vector<NodeSet> out;
  NodeSet left = g.nodes();
  while (!left.empty()) {
    NodeSet comp = relation(g, Relation::Cc, NodeSet::single(left.first()));
    out.push_back(comp);
    left -= comp;
  }
  return out;
}

MixedGraph induced_subgraph(const MixedGraph& g, NodeSet x) {
  check_subset(g, x);
  MixedGraph out(g.universe_size(), x);
  out.set_names(g.names());
  for (NodeId a : x) {
    for (NodeId b : g.children(a) & x) out.add_arrow(a, b);
    for (NodeId b : g.neighbours(a) & x)
      if (a < b) out.add_line(a, b);
    for (NodeId b : g.spouses(a) & x)
      if (a < b) out.add_biarrow(a, b);
  }
  return out;
}

MixedGraph undirected_skeleton(const MixedGraph& g) {
  MixedGraph out(g.universe_size(), g.nodes());
  out.set_names(g.names());
  for (auto [a, b] : g.lines()) out.add_line(a, b);
  return out;
}

std::vector<NodeId> consistent_ordering(const MixedGraph& g) {
  std::vector<NodeId> order;
  NodeSet placed;
  const NodeSet all = g.nodes();
  while (placed != all) {
    bool progressed = false;
    for (NodeId v : all - placed) {
      if (placed.contains(g.parents(v) & all)) {
        order.push_back(v);
        placed.insert(v);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      validate(g);  // reports the cycle
      throw Error(ErrorKind::DirectedCycle, "no consistent ordering exists");
    }
  }
  return order;
}

bool is_amp_cg(const MixedGraph& g) {
  if (g.biarrow_count() > 0) return false;
  for (auto [t, h] : g.arrows())
    if (g.has_line(t, h)) return false;
  // A semidirected cycle exists iff some arrow t -> h has t reachable from h
  // by forward arrows and lines.
  for (auto [t, h] : g.arrows()) {
    NodeSet reach = closure(NodeSet::single(h), [&](NodeId v) { return g.children(v) | g.neighbours(v); });
    if (reach.contains(t)) return false;
  }
  return true;
}

MixedGraph graph_union(const MixedGraph& a, const MixedGraph& b) {
  if (a.universe_size() != b.universe_size())
    throw Error(ErrorKind::NodeOutOfRange, "graph union over different universes");
  MixedGraph out(a.universe_size(), a.nodes() | b.nodes());
  out.set_names(!a.names().empty() ? a.names() : b.names());
  for (const MixedGraph* g : {&a, &b}) {
    for (auto [t, h] : g->arrows()) out.add_arrow(t, h);
    for (auto [x, y] : g->lines()) out.add_line(x, y);
    for (auto [x, y] : g->biarrows()) out.add_biarrow(x, y);
  }
  return out;
}

}  // namespace admg
