#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "admg/graph.hpp"

namespace admg {

enum class ConstraintKind { Dep, Indep };

/// x and y are (in)dependent given cond after intervening on `regime`
/// (0 = observational). Failing a Dep is fatal; failing an Indep costs
/// `weight`.
struct Constraint {
  ConstraintKind kind = ConstraintKind::Dep;
  NodeId x = 0;
  NodeId y = 0;
  NodeSet cond;
  NodeId regime = 0;
  int weight = 1;
};

enum class EdgeKind { Arrow, Line, Biarrow };

struct EdgePrior {
  EdgeKind kind = EdgeKind::Arrow;
  NodeId a = 0;  ///< tail for arrows
  NodeId b = 0;
};

struct LearnProblem {
  int n = 0;
  std::vector<Constraint> constraints;
  bool search_alternative = true;
  bool search_original = false;
  int line_penalty = 1;
  int arrow_penalty = 1;
  int biarrow_penalty = 1;
  std::vector<EdgePrior> forbidden;
  std::vector<EdgePrior> required;
  /// Nodes listed earlier may not have an arrow from a node listed later.
  std::vector<NodeId> ordering;
  /// Exhaustive search is refused above this many nodes.
  int max_n = 5;
};

/// Throws InvalidProblem on malformed constraints or inconsistent priors.
void check_problem(const LearnProblem& p);

struct LearnResult {
  int optimal_score = 0;
  /// Sorted by their edge-atom strings, duplicate-free.
  std::vector<MixedGraph> models;
};

/// The graph after intervening on node i (see `intervene`).
MixedGraph regime_graph(const MixedGraph& g, NodeId i);

/// True iff g respects the problem's edge and ordering priors.
bool satisfies_priors(const MixedGraph& g, const LearnProblem& p);

/// std::nullopt when some Dep constraint is separated in its regime graph;
/// otherwise the summed weight of connected Indep constraints plus the edge
/// penalties.
std::optional<int> score(const MixedGraph& g, const LearnProblem& p);

/// Exhaustive search over every graph in the requested dialects that
/// satisfies the priors; returns all minimizers. Throws ProblemTooLarge and
/// NoFeasibleModel.
LearnResult learn(const LearnProblem& p);

/// ASP program (learning encoding plus optional ordering / original-dialect
/// fragments and edge priors) followed by the constraint atoms.
std::string export_asp(const LearnProblem& p);

/// Constraint file:
///
///     nodes 3
///     dep 1 2 {} 0 1
///     indep 2 3 {1} 3 1
///     order 1 2 3
///     forbid arrow 2 1
///     require line 1 2
///     penalty line 1
LearnProblem parse_constraints(std::istream& in);
LearnProblem load_constraints(const std::string& path);

}  // namespace admg
