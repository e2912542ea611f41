#include "admg/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace admg {

namespace {

bool parse_int(std::string_view tok, int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

[[noreturn]] void parse_error(int line_no, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + what);
}

struct EdgeLine {
  std::string kind;
  std::string a;
  std::string b;
  int line_no;
};

}  // namespace

MixedGraph parse_graph(std::istream& in) {
  int n = -1;
  std::vector<std::string> names;
  bool explicit_names = false;
  std::vector<EdgeLine> edges;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "nodes") {
      if (n >= 0) parse_error(line_no, "duplicate nodes line");
      std::string count;
      if (!(ls >> count) || !parse_int(count, n) || n < 0 || n > kMaxNodes)
        parse_error(line_no, "bad node count");
    } else if (head == "names") {
      if (n < 0) parse_error(line_no, "names before nodes");
      std::string name;
      while (ls >> name) {
        int dummy;
        if (parse_int(name, dummy)) parse_error(line_no, "node names must not be numeric: " + name);
        names.push_back(name);
      }
      if (names.size() != static_cast<std::size_t>(n))
        parse_error(line_no, "expected " + std::to_string(n) + " names");
      explicit_names = true;
    } else if (head == "arrow" || head == "line" || head == "biarrow") {
      if (n < 0) parse_error(line_no, "edge before nodes line");
      EdgeLine e{head, {}, {}, line_no};
      std::string extra;
      if (!(ls >> e.a >> e.b) || (ls >> extra)) parse_error(line_no, "expected two endpoints");
      edges.push_back(std::move(e));
    } else {
      parse_error(line_no, "unknown directive '" + head + "'");
    }
  }
  if (n < 0) throw Error(ErrorKind::Parse, "missing nodes line");

  std::map<std::string, NodeId> by_name;
  for (std::size_t i = 0; i < names.size(); ++i) by_name[names[i]] = static_cast<NodeId>(i + 1);

  bool labelled = explicit_names;
  if (!explicit_names) {
    for (const EdgeLine& e : edges) {
      for (const std::string* tok : {&e.a, &e.b}) {
        int v;
        if (parse_int(*tok, v)) continue;
        labelled = true;
        if (!by_name.count(*tok)) {
          if (static_cast<int>(by_name.size()) == n)
            parse_error(e.line_no, "more labels than nodes: " + *tok);
          names.push_back(*tok);
          by_name[*tok] = static_cast<NodeId>(names.size());
        }
      }
    }
    // Nodes never named keep their index as label.
    if (labelled)
      while (static_cast<int>(names.size()) < n) names.push_back(std::to_string(names.size() + 1));
  }

  auto resolve = [&](const std::string& tok, int ln) -> NodeId {
    int v;
    if (parse_int(tok, v)) {
      if (v < 1 || v > n)
        throw Error(ErrorKind::NodeOutOfRange,
                    "line " + std::to_string(ln) + ": node index out of range: " + tok);
      return v;
    }
    auto it = by_name.find(tok);
    if (it == by_name.end()) parse_error(ln, "unknown node label: " + tok);
    return it->second;
  };

  MixedGraph g(n);
  if (labelled) g.set_names(names);
  std::set<std::tuple<std::string, NodeId, NodeId>> seen;
  for (const EdgeLine& e : edges) {
    NodeId a = resolve(e.a, e.line_no);
    NodeId b = resolve(e.b, e.line_no);
    NodeId lo = a, hi = b;
    if (e.kind != "arrow" && lo > hi) std::swap(lo, hi);
    if (!seen.emplace(e.kind, lo, hi).second)
      throw Error(ErrorKind::DoubleEdgeBothDirectedOrSame,
                  "line " + std::to_string(e.line_no) + ": duplicate " + e.kind, {a, b});
    if (e.kind == "arrow")
      g.add_arrow(a, b);
    else if (e.kind == "line")
      g.add_line(a, b);
    else
      g.add_biarrow(a, b);
  }
  validate(g);
  return g;
}

MixedGraph parse_graph_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

MixedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open graph file " + path);
  return parse_graph(in);
}

std::string serialize_graph(const MixedGraph& g) {
  std::ostringstream out;
  out << "nodes " << g.universe_size() << "\n";
  if (!g.names().empty()) {
    out << "names";
    for (const std::string& name : g.names()) out << ' ' << name;
    out << "\n";
  }
  for (auto [t, h] : g.arrows()) out << "arrow " << g.label(t) << ' ' << g.label(h) << "\n";
  for (auto [a, b] : g.lines()) out << "line " << g.label(a) << ' ' << g.label(b) << "\n";
  for (auto [a, b] : g.biarrows()) out << "biarrow " << g.label(a) << ' ' << g.label(b) << "\n";
  return out.str();
}

NodeId resolve_node(const MixedGraph& g, std::string_view token) {
  const auto& names = g.names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == token) return static_cast<NodeId>(i + 1);
  int v;
  if (parse_int(token, v) && g.has_node(v)) return v;
  throw Error(ErrorKind::NodeOutOfRange, "unknown node '" + std::string(token) + "'");
}

NodeSet parse_node_list(const MixedGraph& g, std::string_view text) {
  NodeSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(start, comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) out.insert(resolve_node(g, tok));
    start = comma + 1;
  }
  return out;
}

std::string atoms_string(const MixedGraph& g) {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const char* kind, NodeId a, NodeId b) {
    out << (first ? "" : " ") << kind << '(' << a << ',' << b << ')';
    first = false;
  };
  for (auto [a, b] : g.lines()) emit("line", a, b);
  for (auto [a, b] : g.biarrows()) emit("biarrow", a, b);
  for (auto [t, h] : g.arrows()) emit("arrow", t, h);
  return out.str();
}

}  // namespace admg
