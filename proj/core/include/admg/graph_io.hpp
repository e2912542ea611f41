#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "admg/graph.hpp"

namespace admg {

/// Line-oriented graph text format:
///
///     # comment
///     nodes 4
///     names A B C D          (optional)
///     arrow 1 2
///     line 2 4
///     biarrow 3 4
///
/// Endpoints are 1-based indices or node labels. Without a `names` line,
/// labels are assigned to indices 1, 2, ... in order of first appearance.
/// Lines and biarrows are unordered. The parsed graph is validated.
MixedGraph parse_graph(std::istream& in);
MixedGraph parse_graph_string(std::string_view text);
MixedGraph load_graph(const std::string& path);

/// Canonical text: `nodes`, then `names` when labelled, then arrows sorted by
/// (tail, head), lines and biarrows sorted by (min, max). Endpoints are
/// written as labels when the graph has them.
std::string serialize_graph(const MixedGraph& g);

/// Resolves a node token (label or 1-based index) against g.
NodeId resolve_node(const MixedGraph& g, std::string_view token);

/// Parses a comma-separated node list; the empty string is the empty set.
NodeSet parse_node_list(const MixedGraph& g, std::string_view text);

/// One-line edge rendering used for learner output, e.g.
/// "line(1,2) line(2,3) arrow(1,2)". Lines, then biarrows, then arrows.
std::string atoms_string(const MixedGraph& g);

}  // namespace admg
