#include "admg/learner.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "admg/docalc.hpp"
#include "admg/graph_io.hpp"
#include "admg/separation.hpp"

namespace admg {

void check_problem(const LearnProblem& p) {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidProblem, what); };
  if (p.n < 1 || p.n > kMaxNodes) bad("node count out of range");
  if (!p.search_alternative && !p.search_original) bad("no dialect selected");
  if (p.line_penalty < 0 || p.arrow_penalty < 0 || p.biarrow_penalty < 0)
    bad("edge penalties must be non-negative");
  auto in_range = [&](NodeId v) { return v >= 1 && v <= p.n; };
  for (const Constraint& c : p.constraints) {
    if (!in_range(c.x) || !in_range(c.y) || !NodeSet::range(p.n).contains(c.cond))
      bad("constraint node out of range");
    if (c.x == c.y) bad("constraint endpoints must differ");
    if (c.cond.contains(c.x) || c.cond.contains(c.y)) bad("constraint endpoint in conditioning set");
    if (c.regime != 0 && !in_range(c.regime))
      bad("bad regime " + std::to_string(c.regime));
    if (c.weight < 0) bad("weights must be non-negative");
  }
  auto check_prior = [&](const EdgePrior& e) {
    if (!in_range(e.a) || !in_range(e.b) || e.a == e.b) bad("edge prior out of range");
  };
  auto same = [](const EdgePrior& a, const EdgePrior& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == EdgeKind::Arrow) return a.a == b.a && a.b == b.b;
    return std::minmax(a.a, a.b) == std::minmax(b.a, b.b);
  };
  for (const EdgePrior& f : p.forbidden) {
    check_prior(f);
    for (const EdgePrior& r : p.required)
      if (same(f, r)) bad("edge both forbidden and required");
  }
  for (const EdgePrior& r : p.required) check_prior(r);
  NodeSet seen;
  for (NodeId v : p.ordering) {
    if (!in_range(v) || seen.contains(v)) bad("ordering must list distinct nodes");
    seen.insert(v);
  }
  for (std::size_t i = 0; i < p.ordering.size(); ++i)
    for (std::size_t j = i + 1; j < p.ordering.size(); ++j)
      for (const EdgePrior& r : p.required)
        if (r.kind == EdgeKind::Arrow && r.a == p.ordering[j] && r.b == p.ordering[i])
          bad("required arrow contradicts the ordering");
}

MixedGraph regime_graph(const MixedGraph& g, NodeId i) {
  if (!g.has_node(i)) throw Error(ErrorKind::NodeOutOfRange, "regime node " + std::to_string(i));
  return intervene(g, NodeSet::single(i));
}

namespace {

bool has_edge(const MixedGraph& g, const EdgePrior& e) {
  switch (e.kind) {
    case EdgeKind::Arrow: return g.has_arrow(e.a, e.b);
    case EdgeKind::Line: return g.has_line(e.a, e.b);
    case EdgeKind::Biarrow: return g.has_biarrow(e.a, e.b);
  }
  return false;
}

}  // namespace

bool satisfies_priors(const MixedGraph& g, const LearnProblem& p) {
  for (const EdgePrior& e : p.forbidden)
    if (has_edge(g, e)) return false;
  for (const EdgePrior& e : p.required)
    if (!has_edge(g, e)) return false;
  for (std::size_t i = 0; i < p.ordering.size(); ++i)
    for (std::size_t j = i + 1; j < p.ordering.size(); ++j)
      if (g.has_arrow(p.ordering[j], p.ordering[i])) return false;
  return true;
}

std::optional<int> score(const MixedGraph& g, const LearnProblem& p) {
  std::map<NodeId, MixedGraph> regimes;
  auto graph_for = [&](NodeId regime) -> const MixedGraph& {
    if (regime == 0) return g;
    auto it = regimes.find(regime);
    if (it == regimes.end()) it = regimes.emplace(regime, regime_graph(g, regime)).first;
    return it->second;
  };
  auto connected = [&](const Constraint& c) {
    return connects_route(graph_for(c.regime),
                          SeparationQuery{NodeSet::single(c.x), NodeSet::single(c.y), c.cond});
  };

  for (const Constraint& c : p.constraints)
    if (c.kind == ConstraintKind::Dep && !connected(c)) return std::nullopt;

  int total = g.line_count() * p.line_penalty + g.arrow_count() * p.arrow_penalty +
              g.biarrow_count() * p.biarrow_penalty;
  for (const Constraint& c : p.constraints)
    if (c.kind == ConstraintKind::Indep && connected(c)) total += c.weight;
  return total;
}

LearnResult learn(const LearnProblem& p) {
  check_problem(p);
  if (p.n > p.max_n)
    throw Error(ErrorKind::ProblemTooLarge, std::to_string(p.n) + " nodes exceeds the cap of " +
                                                std::to_string(p.max_n));
  std::optional<int> best;
  std::vector<MixedGraph> winners;
  auto consider = [&](const MixedGraph& g) {
    if (!satisfies_priors(g, p)) return;
    const std::optional<int> s = score(g, p);
    if (!s) return;
    if (!best || *s < *best) {
      best = s;
      winners.clear();
    }
    if (*s == *best) winners.push_back(g);
  };

  if (p.search_alternative) for_each_graph(p.n, Dialect::Alternative, consider);
  if (p.search_original) {
    // Biarrow-free graphs were already visited as alternative graphs.
    for_each_graph(p.n, Dialect::Original, [&](const MixedGraph& g) {
      if (p.search_alternative && g.biarrow_count() == 0) return;
      consider(g);
    });
  }
  if (!best) throw Error(ErrorKind::NoFeasibleModel, "no graph satisfies every dependence");

  std::vector<std::pair<std::string, MixedGraph>> keyed;
  keyed.reserve(winners.size());
  for (MixedGraph& g : winners) keyed.emplace_back(atoms_string(g), std::move(g));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());

  LearnResult result;
  result.optimal_score = *best;
  for (auto& [key, g] : keyed) result.models.push_back(std::move(g));
  return result;
}

// ---------------------------------------------------------------------------
// ASP export

namespace {

constexpr const char* kLearningProgram = R"(node(X) :- nodes(N), X=1..N.

{ line(X,Y,0) } :- node(X), node(Y), X != Y.
{ arrow(X,Y,0) } :- node(X), node(Y), X != Y.
line(X,Y,I) :- line(X,I,0), line(I,Y,0), node(I), X != Y, I > 0.
arrow(X,Y,I) :- arrow(X,Y,0), node(I), Y != I, I > 0.
line(X,Y,I) :- line(Y,X,I).
:- arrow(X,Y,I), arrow(Y,X,I).

ancestor(X,Y) :- arrow(X,Y,0).
ancestor(X,Y) :- ancestor(X,Z), ancestor(Z,Y).
:- ancestor(X,Y), arrow(Y,X,0).

inside_set(X,C) :- node(X), set(C), 2**(X-1) & C != 0.
outside_set(X,C) :- node(X), set(C), 2**(X-1) & C == 0.


end_line(X,Y,C,I) :- line(X,Y,I), outside_set(X,C).
end_head(X,Y,C,I) :- arrow(X,Y,I), outside_set(X,C).
end_tail(X,Y,C,I) :- arrow(Y,X,I), outside_set(X,C).

end_line(X,Y,C,I) :- end_line(X,Z,C,I), line(Z,Y,I), outside_set(Z,C).
end_line(X,Y,C,I) :- end_tail(X,Z,C,I), line(Z,Y,I), outside_set(Z,C).
end_head(X,Y,C,I) :- end_line(X,Z,C,I), arrow(Z,Y,I), outside_set(Z,C).
end_head(X,Y,C,I) :- end_head(X,Z,C,I), arrow(Z,Y,I), outside_set(Z,C).
end_head(X,Y,C,I) :- end_tail(X,Z,C,I), arrow(Z,Y,I), outside_set(Z,C).
end_tail(X,Y,C,I) :- end_tail(X,Z,C,I), arrow(Y,Z,I), outside_set(Z,C).

end_line(X,Y,C,I) :- end_head(X,Z,C,I), line(Z,Y,I), inside_set(Z,C).
end_tail(X,Y,C,I) :- end_line(X,Z,C,I), arrow(Y,Z,I), inside_set(Z,C).
end_tail(X,Y,C,I) :- end_head(X,Z,C,I), arrow(Y,Z,I), inside_set(Z,C).

con(X,Y,C,I) :- end_line(X,Y,C,I), X != Y, outside_set(Y,C).
con(X,Y,C,I) :- end_head(X,Y,C,I), X != Y, outside_set(Y,C).
con(X,Y,C,I) :- end_tail(X,Y,C,I), X != Y, outside_set(Y,C).
con(X,Y,C,I) :- con(Y,X,C,I).

:- dep(X,Y,C,I,W), not con(X,Y,C,I).

:~ indep(X,Y,C,I,W), con(X,Y,C,I). [W,X,Y,C,I]

:~ line(X,Y,0), X < Y. [@LINE@,X,Y,1]
:~ arrow(X,Y,0). [@ARROW@,X,Y,2]

#show. #show line(X,Y) : line(X,Y,0), X < Y. #show arrow(X,Y) : arrow(X,Y,0).
)";

constexpr const char* kOriginalDialect = R"({ biarrow(X,Y,0) } :- node(X), node(Y), X != Y.
:- biarrow(X,Y,0), line(Z,W,0).
biarrow(X,Y,I) :- biarrow(X,Y,0), node(I), X != I, Y != I, I > 0.
biarrow(X,Y,I) :- biarrow(Y,X,I).

end_head(X,Y,C,I) :- biarrow(X,Y,I), outside_set(X,C).
end_head(X,Y,C,I) :- end_tail(X,Z,C,I), biarrow(Z,Y,I), outside_set(Z,C).
end_head(X,Y,C,I) :- end_head(X,Z,C,I), biarrow(Z,Y,I), inside_set(Z,C).

:~ biarrow(X,Y,0), X < Y. [@BIARROW@,X,Y,3]

#show biarrow(X,Y) : biarrow(X,Y,0), X < Y.
)";

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
}

const char* predicate(EdgeKind k) {
  switch (k) {
    case EdgeKind::Arrow: return "arrow";
    case EdgeKind::Line: return "line";
    case EdgeKind::Biarrow: return "biarrow";
  }
  return "arrow";
}

}  // namespace

std::string export_asp(const LearnProblem& p) {
  check_problem(p);
  std::ostringstream out;
  std::string program = kLearningProgram;
  replace_all(program, "@LINE@", std::to_string(p.line_penalty));
  replace_all(program, "@ARROW@", std::to_string(p.arrow_penalty));
  out << program;

  if (p.search_original) {
    std::string extra = kOriginalDialect;
    replace_all(extra, "@BIARROW@", std::to_string(p.biarrow_penalty));
    out << "\n" << extra;
    if (!p.search_alternative) out << ":- line(X,Y,0).\n";
  }
  if (!p.ordering.empty()) {
    out << "\n";
    for (std::size_t j = 1; j < p.ordering.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        out << ":- arrow(" << p.ordering[j] << ',' << p.ordering[i] << ",0).\n";
  }
  if (!p.forbidden.empty() || !p.required.empty()) {
    out << "\n";
    for (const EdgePrior& e : p.forbidden)
      out << ":- " << predicate(e.kind) << '(' << e.a << ',' << e.b << ",0).\n";
    for (const EdgePrior& e : p.required)
      out << ":- not " << predicate(e.kind) << '(' << e.a << ',' << e.b << ",0).\n";
  }

  out << "\nnodes(" << p.n << ").\n";
  out << "set(0.." << ((std::uint64_t{1} << p.n) - 1) << ").\n";
  if (!p.constraints.empty()) out << "\n";
  for (const Constraint& c : p.constraints) {
    out << (c.kind == ConstraintKind::Dep ? "dep(" : "indep(") << c.x << ',' << c.y << ','
        << c.cond.bits() << ',' << c.regime << ',' << c.weight << ").\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Constraint file

namespace {

int parse_integer(const std::string& tok, int line_no, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what +
                                      " must be an integer, got '" + tok + "'");
  return v;
}

EdgeKind parse_edge_kind(const std::string& tok, int line_no) {
  if (tok == "arrow") return EdgeKind::Arrow;
  if (tok == "line") return EdgeKind::Line;
  if (tok == "biarrow") return EdgeKind::Biarrow;
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": unknown edge kind '" + tok + "'");
}

}  // namespace

LearnProblem parse_constraints(std::istream& in) {
  LearnProblem p;
  p.n = -1;
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    if (head != "nodes" && p.n < 0) fail("expected 'nodes' first");

    if (head == "nodes") {
      if (p.n >= 0) fail("duplicate nodes line");
      if (toks.size() != 2) fail("expected 'nodes <n>'");
      p.n = parse_integer(toks[1], line_no, "node count");
      if (p.n < 1 || p.n > kMaxNodes) fail("node count out of range");
    } else if (head == "dep" || head == "indep") {
      // The set may contain spaces: re-join tokens between the braces.
      std::size_t i = 3;
      if (toks.size() < 4 || toks[3].front() != '{') fail("expected '{...}' conditioning set");
      std::string set = toks[3];
      while (set.back() != '}' && i + 1 < toks.size()) set += toks[++i];
      if (set.back() != '}') fail("unterminated conditioning set");
      if (toks.size() != i + 3) fail("expected '<kind> <x> <y> {set} <regime> <weight>'");
      Constraint c;
      c.kind = head == "dep" ? ConstraintKind::Dep : ConstraintKind::Indep;
      c.x = parse_integer(toks[1], line_no, "node");
      c.y = parse_integer(toks[2], line_no, "node");
      MixedGraph universe(p.n);
      try {
        c.cond = parse_node_list(universe, std::string_view(set).substr(1, set.size() - 2));
      } catch (const Error& e) {
        fail(e.what());
      }
      c.regime = parse_integer(toks[i + 1], line_no, "regime");
      c.weight = parse_integer(toks[i + 2], line_no, "weight");
      p.constraints.push_back(c);
    } else if (head == "order") {
      if (!p.ordering.empty()) fail("duplicate order line");
      for (std::size_t i = 1; i < toks.size(); ++i)
        p.ordering.push_back(parse_integer(toks[i], line_no, "node"));
    } else if (head == "forbid" || head == "require") {
      if (toks.size() != 4) fail("expected '" + head + " <arrow|line|biarrow> <i> <j>'");
      EdgePrior e{parse_edge_kind(toks[1], line_no), parse_integer(toks[2], line_no, "node"),
                  parse_integer(toks[3], line_no, "node")};
      (head == "forbid" ? p.forbidden : p.required).push_back(e);
    } else if (head == "penalty") {
      if (toks.size() != 3) fail("expected 'penalty <arrow|line|biarrow> <w>'");
      const int w = parse_integer(toks[2], line_no, "penalty");
      switch (parse_edge_kind(toks[1], line_no)) {
        case EdgeKind::Arrow: p.arrow_penalty = w; break;
        case EdgeKind::Line: p.line_penalty = w; break;
        case EdgeKind::Biarrow: p.biarrow_penalty = w; break;
      }
    } else {
      fail("unknown directive '" + head + "'");
    }
  }
  if (p.n < 0) throw Error(ErrorKind::Parse, "missing nodes line");
  try {
    check_problem(p);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return p;
}

LearnProblem load_constraints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open constraint file " + path);
  return parse_constraints(in);
}

}  // namespace admg
