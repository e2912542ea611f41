#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "admg/graph.hpp"

namespace admg {

/// Graph surgery for an intervention on x.
///
/// Alternative dialect (no biarrows): delete arrows into x, add A - B for
/// every line path A - V1 - ... - Vk - B with A, B outside x and all Vi in x,
/// then delete every line touching x.
/// Original dialect: delete arrows into x and biarrows touching x.
MixedGraph intervene(const MixedGraph& g, NodeSet x);

/// A graph augmented with intervention indicators F_A -> A for a designated
/// set of nodes. The F nodes are appended after the base universe in
/// increasing order of the node they point at.
struct RegimeGraph {
  MixedGraph graph;
  std::map<NodeId, NodeId> regime_nodes;  ///< A -> F_A

  NodeSet indicators(NodeSet targets) const;
};

RegimeGraph add_regime_nodes(const MixedGraph& g, NodeSet targets);

/// Premise check for do-calculus rule 1, 2 or 3 on (x, y, z, w), via
/// route separation:
///   rule 1: y ⫫ z | x ∪ w         in G||x
///   rule 2: y ⫫ F_z | x ∪ w ∪ z   in (G + F_z)||x
///   rule 3: y ⫫ F_z | x ∪ w       in (G + F_z)||x
/// Indicators are added only for z. Throws OverlappingSets when the sets are
/// not pairwise disjoint.
bool rule_applicable(const MixedGraph& g, int rule, NodeSet x, NodeSet y, NodeSet z, NodeSet w);

struct RuleStep {
  int rule = 0;
  NodeSet x, y, z, w;
};

struct DerivationReport {
  bool success = true;
  std::optional<std::size_t> failed_step;  ///< 0-based
};

DerivationReport check_derivation(const MixedGraph& g, const std::vector<RuleStep>& script);

/// Script lines: `rule <k> x=<set> y=<set> z=<set> w=<set>` where a set is a
/// comma-separated node list (labels or indices), possibly empty. Missing
/// sets are empty. `#` starts a comment. Throws MalformedScript.
std::vector<RuleStep> parse_derivation(const MixedGraph& g, std::istream& in);

}  // namespace admg
