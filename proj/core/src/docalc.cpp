#include "admg/docalc.hpp"

#include <sstream>

#include "admg/graph_io.hpp"
#include "admg/separation.hpp"

namespace admg {

MixedGraph intervene(const MixedGraph& g, NodeSet x) {
  if (!g.nodes().contains(x))
    throw Error(ErrorKind::NodeOutOfRange, "intervention set " + to_string(x) + " outside graph");
  MixedGraph out = g;
  for (NodeId v : x)
    for (NodeId p : g.parents(v)) out.remove_arrow(p, v);

  if (dialect_of(g) == Dialect::Original) {
    for (NodeId v : x)
      for (NodeId s : g.spouses(v)) out.remove_biarrow(v, s);
    return out;
  }

  // Bridge line paths whose interior lies in x.
  for (NodeId a : g.nodes() - x) {
    NodeSet frontier = g.neighbours(a) & x;
    NodeSet inside = frontier;
    NodeSet ends;
    while (!frontier.empty()) {
      NodeSet next;
      for (NodeId v : frontier) next |= g.neighbours(v);
      ends |= next - x;
      frontier = (next & x) - inside;
      inside |= frontier;
    }
    for (NodeId b : ends)
      if (a < b) out.add_line(a, b);
  }
  for (NodeId v : x)
    for (NodeId u : out.neighbours(v)) out.remove_line(u, v);
  return out;
}

NodeSet RegimeGraph::indicators(NodeSet targets) const {
  NodeSet out;
  for (NodeId v : targets) {
    auto it = regime_nodes.find(v);
    if (it == regime_nodes.end())
      throw Error(ErrorKind::NodeNotInSet, "no regime node for " + std::to_string(v));
    out.insert(it->second);
  }
  return out;
}

RegimeGraph add_regime_nodes(const MixedGraph& g, NodeSet targets) {
  if (!g.nodes().contains(targets))
    throw Error(ErrorKind::NodeOutOfRange, "regime targets " + to_string(targets) + " outside graph");
  const int n = g.universe_size();
  const int total = n + targets.size();
  if (total > kMaxNodes)
    throw Error(ErrorKind::NodeOutOfRange, "too many nodes after adding regime indicators");

  NodeSet nodes = g.nodes();
  RegimeGraph rg;
  NodeId next = n + 1;
  for (NodeId v : targets) {
    rg.regime_nodes[v] = next;
    nodes.insert(next);
    ++next;
  }
  MixedGraph out(total, nodes);
  if (!g.names().empty()) {
    std::vector<std::string> names = g.names();
    for (NodeId v : targets) names.push_back("F_" + g.label(v));
    out.set_names(std::move(names));
  }
  for (auto [t, h] : g.arrows()) out.add_arrow(t, h);
  for (auto [a, b] : g.lines()) out.add_line(a, b);
  for (auto [a, b] : g.biarrows()) out.add_biarrow(a, b);
  for (auto [v, f] : rg.regime_nodes) out.add_arrow(f, v);
  rg.graph = std::move(out);
  return rg;
}

bool rule_applicable(const MixedGraph& g, int rule, NodeSet x, NodeSet y, NodeSet z, NodeSet w) {
  if (rule < 1 || rule > 3)
    throw Error(ErrorKind::MalformedScript, "rule must be 1, 2 or 3");
  for (NodeSet s : {x, y, z, w})
    if (!g.nodes().contains(s))
      throw Error(ErrorKind::NodeOutOfRange, "rule argument " + to_string(s) + " outside graph");
  if (x.intersects(y) || x.intersects(z) || x.intersects(w) || y.intersects(z) ||
      y.intersects(w) || z.intersects(w))
    throw Error(ErrorKind::OverlappingSets, "x, y, z, w must be pairwise disjoint");
  if (y.empty() || z.empty()) return true;

  if (rule == 1) {
    const MixedGraph cut = intervene(g, x);
    return separated(cut, SeparationQuery{y, z, x | w}, Criterion::Route);
  }
  const RegimeGraph rg = add_regime_nodes(g, z);
  const MixedGraph cut = intervene(rg.graph, x);
  const NodeSet f = rg.indicators(z);
  const NodeSet cond = rule == 2 ? (x | w | z) : (x | w);
  return separated(cut, SeparationQuery{y, f, cond}, Criterion::Route);
}

DerivationReport check_derivation(const MixedGraph& g, const std::vector<RuleStep>& script) {
  DerivationReport report;
  for (std::size_t i = 0; i < script.size(); ++i) {
    const RuleStep& s = script[i];
    if (!rule_applicable(g, s.rule, s.x, s.y, s.z, s.w)) {
      report.success = false;
      report.failed_step = i;
      return report;
    }
  }
  return report;
}

std::vector<RuleStep> parse_derivation(const MixedGraph& g, std::istream& in) {
  std::vector<RuleStep> steps;
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::MalformedScript, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "rule") fail("expected 'rule'");
    RuleStep step;
    if (!(ls >> step.rule) || step.rule < 1 || step.rule > 3) fail("rule number must be 1, 2 or 3");
    std::string tok;
    NodeSet seen_keys;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq != 1) fail("expected <x|y|z|w>=<set>, got '" + tok + "'");
      const char key = tok[0];
      NodeSet value;
      try {
        value = parse_node_list(g, std::string_view(tok).substr(2));
      } catch (const Error& e) {
        fail(e.what());
      }
      const auto pos = std::string_view("xyzw").find(key);
      if (pos == std::string_view::npos) fail(std::string("unknown set name '") + key + "'");
      const int slot = static_cast<int>(pos);
      if (seen_keys.contains(slot + 1)) fail(std::string("duplicate set '") + key + "'");
      seen_keys.insert(slot + 1);
      switch (key) {
        case 'x': step.x = value; break;
        case 'y': step.y = value; break;
        case 'z': step.z = value; break;
        default: step.w = value; break;
      }
    }
    steps.push_back(step);
  }
  return steps;
}

}  // namespace admg
