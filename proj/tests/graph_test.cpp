#include <gtest/gtest.h>

#include <set>

#include "admg/graph.hpp"
#include "admg/graph_io.hpp"

namespace admg {
namespace {

// Labels A..F map to 1..6.
constexpr NodeId A = 1, B = 2, C = 3, D = 4, E = 5, F = 6;

MixedGraph six_node() {
  MixedGraph g(6);
  g.add_arrow(A, B);
  g.add_arrow(A, C);
  g.add_arrow(A, D);
  g.add_arrow(B, D);
  g.add_arrow(E, F);
  g.add_line(C, D);
  g.add_line(C, E);
  g.add_line(D, F);
  g.add_line(E, F);
  return g;
}

ErrorKind kind_of(const MixedGraph& g) {
  try {
    validate(g);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected validation error";
  return ErrorKind::Parse;
}

TEST(NodeSet, BasicAlgebra) {
  const NodeSet s{1, 3, 5};
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s - NodeSet{3}, (NodeSet{1, 5}));
  EXPECT_EQ(s & NodeSet::range(3), (NodeSet{1, 3}));
  EXPECT_EQ(to_string(s), "{1,3,5}");
  EXPECT_EQ(to_string(NodeSet{}), "{}");
  int count = 0;
  for_each_subset(s, [&](NodeSet) { ++count; });
  EXPECT_EQ(count, 8);
}

TEST(Validate, AcceptsChainWithLine) {
  MixedGraph g(3);
  g.add_arrow(1, 2);
  g.add_arrow(2, 3);
  g.add_line(2, 3);
  EXPECT_NO_THROW(validate(g));
}

TEST(Validate, RejectsDirectedCycleWithWitness) {
  MixedGraph g(3);
  g.add_arrow(1, 2);
  g.add_arrow(2, 3);
  g.add_arrow(3, 1);
  try {
    validate(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DirectedCycle);
    ASSERT_EQ(e.witness().size(), 4u);
    EXPECT_EQ(e.witness().front(), e.witness().back());
  }
}

TEST(Validate, RejectsSelfEdgeAndDoubleArrow) {
  MixedGraph g(2);
  g.add_line(1, 1);
  EXPECT_EQ(kind_of(g), ErrorKind::SelfEdge);
  MixedGraph h(2);
  h.add_arrow(1, 2);
  h.add_arrow(2, 1);
  EXPECT_EQ(kind_of(h), ErrorKind::DoubleArrow);
}

TEST(Validate, LinesAndBiarrowsDoNotMix) {
  MixedGraph g(3);
  g.add_line(1, 2);
  g.add_biarrow(2, 3);
  EXPECT_EQ(kind_of(g), ErrorKind::LineBiarrowMix);
  MixedGraph h(2);
  h.add_line(1, 2);
  h.add_biarrow(1, 2);
  EXPECT_EQ(kind_of(h), ErrorKind::DoubleEdgeBothDirectedOrSame);
}

TEST(Validate, ArrowWithBiarrowIsAnOriginalAdmg) {
  MixedGraph g(3);
  g.add_arrow(1, 2);
  g.add_biarrow(1, 2);
  g.add_biarrow(1, 3);
  g.add_biarrow(2, 3);
  EXPECT_NO_THROW(validate(g));
  EXPECT_EQ(dialect_of(g), Dialect::Original);
}

TEST(Validate, NodeOutOfRange) {
  MixedGraph g(2);
  EXPECT_THROW(g.add_arrow(1, 3), Error);
}

TEST(Relation, SixNode) {
  const MixedGraph g = six_node();
  EXPECT_EQ(relation(g, Relation::Ne, NodeSet{D}), (NodeSet{C, F}));
  EXPECT_EQ(relation(g, Relation::Pa, NodeSet{D}), (NodeSet{A, B}));
  EXPECT_EQ(relation(g, Relation::Ch, NodeSet{A}), (NodeSet{B, C, D}));
  EXPECT_EQ(relation(g, Relation::An, NodeSet{D}), (NodeSet{A, B, D}));
  EXPECT_EQ(relation(g, Relation::De, NodeSet{A}), (NodeSet{A, B, C, D}));
  EXPECT_EQ(relation(g, Relation::de, NodeSet{B}), (NodeSet{B, C, D, E, F}));
  EXPECT_EQ(relation(g, Relation::Nd, NodeSet{B}), (NodeSet{A}));
  EXPECT_EQ(relation(g, Relation::Cc, NodeSet{C}), (NodeSet{C, D, E, F}));
}

TEST(Relation, EmptySetIsEmpty) {
  const MixedGraph g = six_node();
  for (Relation r : {Relation::Pa, Relation::Ch, Relation::Ne, Relation::An, Relation::De,
                     Relation::de, Relation::Cc})
    EXPECT_TRUE(relation(g, r, NodeSet{}).empty());
}

TEST(Components, SixNode) {
  const auto comps = connectivity_components(six_node());
  const std::set<NodeSet> got(comps.begin(), comps.end());
  const std::set<NodeSet> want{NodeSet{A}, NodeSet{B}, NodeSet{C, D, E, F}};
  EXPECT_EQ(got, want);
}

TEST(Subgraph, InducedAndSkeleton) {
  const MixedGraph g = six_node();
  const MixedGraph sub = induced_subgraph(g, NodeSet{C, D, E, F});
  EXPECT_EQ(sub.nodes(), (NodeSet{C, D, E, F}));
  EXPECT_EQ(sub.lines(), (std::vector<Edge>{{C, D}, {C, E}, {D, F}, {E, F}}));
  EXPECT_EQ(sub.arrows(), (std::vector<Edge>{{E, F}}));

  const MixedGraph u = undirected_skeleton(g);
  EXPECT_EQ(u.arrow_count(), 0);
  EXPECT_EQ(u.lines(), g.lines());
}

TEST(Ordering, LowestIndexFirst) {
  MixedGraph g(3);
  g.add_arrow(1, 2);
  g.add_arrow(2, 3);
  g.add_line(2, 3);
  EXPECT_EQ(consistent_ordering(g), (std::vector<NodeId>{1, 2, 3}));

  MixedGraph h(3);
  h.add_arrow(3, 1);
  EXPECT_EQ(consistent_ordering(h), (std::vector<NodeId>{2, 3, 1}));
}

TEST(Ordering, RespectsEveryArrowOnRandomGraphs) {
  for_each_graph(4, Dialect::Alternative, [](const MixedGraph& g) {
    const auto order = consistent_ordering(g);
    std::vector<int> pos(5);
    for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    for (auto [t, h] : g.arrows()) ASSERT_LT(pos[static_cast<std::size_t>(t)], pos[static_cast<std::size_t>(h)]);
  });
}

TEST(AmpCg, DoubleEdgesAndSemidirectedCycles) {
  MixedGraph chain_line(3);
  chain_line.add_arrow(1, 2);
  chain_line.add_arrow(2, 3);
  chain_line.add_line(2, 3);
  EXPECT_FALSE(is_amp_cg(chain_line));

  MixedGraph chain(3);
  chain.add_arrow(1, 2);
  chain.add_line(2, 3);
  EXPECT_TRUE(is_amp_cg(chain));

  // 1 -> 2 - 3 - 1 is a semidirected cycle.
  MixedGraph cyc(3);
  cyc.add_arrow(1, 2);
  cyc.add_line(2, 3);
  cyc.add_line(3, 1);
  EXPECT_FALSE(is_amp_cg(cyc));
}

TEST(Enumerate, CountsMatchClosedForm) {
  // Acyclic arrow configurations: 25 on three labelled nodes, 543 on four.
  // Each is combined with every subset of the unordered pairs as lines.
  long n3 = 0, n4 = 0;
  for_each_graph(3, Dialect::Alternative, [&](const MixedGraph&) { ++n3; });
  for_each_graph(4, Dialect::Alternative, [&](const MixedGraph&) { ++n4; });
  EXPECT_EQ(n3, 25 * 8);
  EXPECT_EQ(n4, 543 * 64);
}

TEST(Enumerate, AllDistinctAndValid) {
  std::set<std::string> seen;
  for_each_graph(3, Dialect::Original, [&](const MixedGraph& g) {
    EXPECT_NO_THROW(validate(g));
    EXPECT_TRUE(seen.insert(serialize_graph(g)).second);
  });
}

TEST(GraphIo, RoundTripsExhaustively) {
  for_each_graph(3, Dialect::Alternative, [](const MixedGraph& g) {
    const std::string text = serialize_graph(g);
    EXPECT_EQ(parse_graph_string(text), g) << text;
    EXPECT_EQ(serialize_graph(parse_graph_string(text)), text);
  });
}

TEST(GraphIo, LabelsAndComments) {
  const MixedGraph g = parse_graph_string(
      "# chain with a line\n"
      "nodes 3\n"
      "names A B D\n"
      "arrow A B   # first\n"
      "arrow B D\n"
      "line D B\n");
  EXPECT_TRUE(g.has_arrow(1, 2));
  EXPECT_TRUE(g.has_line(2, 3));
  EXPECT_EQ(g.label(3), "D");
  EXPECT_EQ(serialize_graph(g), "nodes 3\nnames A B D\narrow A B\narrow B D\nline B D\n");
  EXPECT_EQ(parse_node_list(g, "A,D"), (NodeSet{1, 3}));
  EXPECT_EQ(parse_node_list(g, ""), NodeSet{});
  EXPECT_EQ(atoms_string(g), "line(2,3) arrow(1,2) arrow(2,3)");
}

TEST(GraphIo, LabelsByFirstAppearance) {
  const MixedGraph g = parse_graph_string("nodes 2\narrow X Y\n");
  EXPECT_EQ(resolve_node(g, "X"), 1);
  EXPECT_EQ(resolve_node(g, "Y"), 2);
}

TEST(GraphIo, Errors) {
  auto kind = [](const char* text) {
    try {
      parse_graph_string(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidProblem;
  };
  EXPECT_EQ(kind("nodes 2\narrow 1 2\narrow 1 2\n"), ErrorKind::DoubleEdgeBothDirectedOrSame);
  EXPECT_EQ(kind("nodes 2\narrow 1 3\n"), ErrorKind::NodeOutOfRange);
  EXPECT_EQ(kind("nodes 2\nwedge 1 2\n"), ErrorKind::Parse);
  EXPECT_EQ(kind("arrow 1 2\n"), ErrorKind::Parse);
  EXPECT_EQ(kind("nodes 2\narrow 1 2\narrow 2 1\n"), ErrorKind::DoubleArrow);
}

}  // namespace
}  // namespace admg
