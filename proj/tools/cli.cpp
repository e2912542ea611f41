#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "admg/docalc.hpp"
#include "admg/graph_io.hpp"
#include "admg/learner.hpp"
#include "admg/markov.hpp"
#include "admg/sem.hpp"
#include "admg/separation.hpp"

namespace admg::cli {
namespace {

using json = nlohmann::json;

std::string set_label(const MixedGraph& g, NodeSet s) {
  std::string out = "{";
  bool first = true;
  for (NodeId v : s) {
    if (!first) out += ',';
    out += g.label(v);
    first = false;
  }
  return out + "}";
}

json set_json(const MixedGraph& g, NodeSet s) {
  json arr = json::array();
  for (NodeId v : s) arr.push_back(g.label(v));
  return arr;
}

std::string statement_label(const MixedGraph& g, const CiStatement& s) {
  return set_label(g, s.x) + " _||_ " + set_label(g, s.y) + " | " + set_label(g, s.z);
}

std::string format_pcor(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void apply_dialect(LearnProblem& p, const std::string& dialect) {
  p.search_alternative = dialect != "orig";
  p.search_original = dialect != "alt";
}

struct Options {
  std::string graph;
  std::string constraints;
  std::string script;
  std::string x, y, z, w;
  int criterion = 2;
  int rule = 0;
  int all_n = 0;
  std::string property;
  std::string oracle = "graph";
  std::string order;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  std::string queries = "all";
  std::string dialect = "alt";
  int max_n = 5;
  std::string emit_asp;
  std::string output;
  std::string format = "text";
};

int cmd_sep(const Options& o, std::ostream& out) {
  const MixedGraph g = load_graph(o.graph);
  const SeparationQuery q{parse_node_list(g, o.x), parse_node_list(g, o.y), parse_node_list(g, o.z)};
  const bool sep = separated(g, q, static_cast<Criterion>(o.criterion));
  if (o.format == "json") {
    out << json{{"criterion", o.criterion},
                {"x", set_json(g, q.x)},
                {"y", set_json(g, q.y)},
                {"z", set_json(g, q.z)},
                {"separated", sep}}
               .dump()
        << '\n';
  } else {
    out << (sep ? "separated" : "connected") << '\n';
  }
  return sep ? kOk : kNegative;
}

// Compares the four criteria on every singleton query of one graph.
int count_disagreements(const MixedGraph& g, std::ostream& out, long& queries) {
  int bad = 0;
  const NodeSet v = g.nodes();
  for (NodeId a : v)
    for (NodeId b : v) {
      if (b <= a) continue;
      const NodeSet rest = v - NodeSet::single(a) - NodeSet::single(b);
      for_each_subset(rest, [&](NodeSet z) {
        const SeparationQuery q{NodeSet::single(a), NodeSet::single(b), z};
        const bool r2 = separated(g, q, Criterion::Route);
        ++queries;
        for (Criterion c : {Criterion::Path, Criterion::Augmented, Criterion::MarginalAugmented}) {
          if (separated(g, q, c) != r2) {
            ++bad;
            out << "disagreement: " << atoms_string(g) << " | " << g.label(a) << ", " << g.label(b)
                << " given " << set_label(g, z) << " criterion " << static_cast<int>(c) << '\n';
          }
        }
      });
    }
  return bad;
}

int cmd_equiv_check(const Options& o, std::ostream& out) {
  long graphs = 0, queries = 0;
  int bad = 0;
  if (!o.graph.empty()) {
    const MixedGraph g = load_graph(o.graph);
    if (g.biarrow_count() > 0)
      throw Error(ErrorKind::UnsupportedDialect, "criteria 1, 3 and 4 need an alternative graph");
    bad = count_disagreements(g, out, queries);
    graphs = 1;
  } else {
    for_each_graph(o.all_n, Dialect::Alternative, [&](const MixedGraph& g) {
      bad += count_disagreements(g, out, queries);
      ++graphs;
    });
  }
  out << "graphs " << graphs << " queries " << queries << " disagreements " << bad << '\n';
  return bad == 0 ? kOk : kInvariant;
}

int cmd_magnify(const Options& o, std::ostream& out) {
  out << serialize_graph(magnify(load_graph(o.graph)));
  return kOk;
}

int cmd_intervene(const Options& o, std::ostream& out) {
  const MixedGraph g = load_graph(o.graph);
  out << serialize_graph(intervene(g, parse_node_list(g, o.x)));
  return kOk;
}

int cmd_rule(const Options& o, std::ostream& out) {
  const MixedGraph g = load_graph(o.graph);
  const bool ok = rule_applicable(g, o.rule, parse_node_list(g, o.x), parse_node_list(g, o.y),
                                  parse_node_list(g, o.z), parse_node_list(g, o.w));
  out << (ok ? "applicable" : "not applicable") << '\n';
  return ok ? kOk : kNegative;
}

int cmd_derive(const Options& o, std::ostream& out) {
  const MixedGraph g = load_graph(o.graph);
  std::ifstream in(o.script);
  if (!in) throw Error(ErrorKind::MalformedScript, "cannot open script " + o.script);
  const std::vector<RuleStep> steps = parse_derivation(g, in);
  const DerivationReport report = check_derivation(g, steps);
  if (report.success) {
    out << "derivation holds (" << steps.size() << " steps)\n";
    return kOk;
  }
  const RuleStep& s = steps[*report.failed_step];
  out << "derivation fails at step " << *report.failed_step + 1 << ": rule " << s.rule
      << " x=" << set_label(g, s.x) << " y=" << set_label(g, s.y) << " z=" << set_label(g, s.z)
      << " w=" << set_label(g, s.w) << '\n';
  return kNegative;
}

int cmd_markov_verify(const Options& o, std::ostream& out) {
  const MixedGraph g = load_graph(o.graph);
  std::vector<CiStatement> statements;
  if (o.property == "ordered-local" || o.property == "ordered-pairwise") {
    OrderedContext ctx{g, {}};
    if (o.order.empty()) {
      ctx.ordering = consistent_ordering(g);
    } else {
      std::istringstream ls(o.order);
      for (std::string tok; std::getline(ls, tok, ',');) ctx.ordering.push_back(resolve_node(g, tok));
    }
    statements = o.property == "ordered-local" ? ordered_local_statements(ctx)
                                               : ordered_pairwise_statements(ctx);
  } else if (o.property == "amp-local") {
    statements = amp_statements(g, AmpFlavor::Local);
  } else if (o.property == "amp-pairwise") {
    statements = amp_statements(g, AmpFlavor::Pairwise);
  } else {
    statements = amp_statements(g, AmpFlavor::BlockRecursive);
  }

  const CiOracle oracle = o.oracle == "gaussian"
                              ? gaussian_oracle(implied_covariance(random_sem(g, o.seed)), o.tol)
                              : graphical_oracle(g);
  const std::vector<CiStatement> failures = verify_statements(statements, oracle);
  for (const CiStatement& s : failures) out << "FAIL " << statement_label(g, s) << '\n';
  out << "statements " << statements.size() << " failures " << failures.size() << '\n';
  return failures.empty() ? kOk : kInvariant;
}

int cmd_sem_check(const Options& o, std::ostream& out) {
  const MixedGraph g = load_graph(o.graph);
  const CovarianceMatrix sigma = implied_covariance(random_sem(g, o.seed));
  const NodeSet v = g.nodes();
  int checked = 0, failures = 0;
  out << "x\ty\tz\tseparated\tpcor\tstatus\n";
  for (NodeId a : v)
    for (NodeId b : v) {
      if (b <= a) continue;
      for_each_subset(v - NodeSet::single(a) - NodeSet::single(b), [&](NodeSet z) {
        const bool sep =
            separated(g, SeparationQuery{NodeSet::single(a), NodeSet::single(b), z}, Criterion::Route);
        if (!sep && o.queries == "separated") return;
        const double r = partial_correlation(sigma, a, b, z);
        std::string status = "-";
        if (sep) {
          ++checked;
          const bool pass = std::abs(r) < o.tol;
          if (!pass) ++failures;
          status = pass ? "PASS" : "FAIL";
        }
        out << g.label(a) << '\t' << g.label(b) << '\t' << set_label(g, z) << '\t'
            << (sep ? "yes" : "no") << '\t' << format_pcor(r) << '\t' << status << '\n';
      });
    }
  out << "checked " << checked << " failures " << failures << '\n';
  return failures == 0 ? kOk : kInvariant;
}

LearnProblem load_problem(const Options& o) {
  LearnProblem p = load_constraints(o.constraints);
  apply_dialect(p, o.dialect);
  p.max_n = o.max_n;
  return p;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, "cannot write " + path);
  f << text;
}

int cmd_learn(const Options& o, std::ostream& out) {
  const LearnProblem p = load_problem(o);
  if (!o.emit_asp.empty()) write_file(o.emit_asp, export_asp(p));
  const LearnResult r = learn(p);
  if (o.format == "json") {
    json models = json::array();
    for (const MixedGraph& g : r.models) models.push_back(atoms_string(g));
    out << json{{"optimal_score", r.optimal_score}, {"models", models}}.dump(2) << '\n';
  } else {
    out << "optimal score " << r.optimal_score << '\n';
    for (const MixedGraph& g : r.models) {
      const std::string atoms = atoms_string(g);
      out << (atoms.empty() ? "empty" : atoms) << '\n';
    }
  }
  return kOk;
}

int cmd_export_asp(const Options& o, std::ostream& out) {
  const std::string text = export_asp(load_problem(o));
  if (o.output.empty())
    out << text;
  else
    write_file(o.output, text);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separation, Markov properties, do-calculus and structure learning for mixed graphs",
               "admg"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Options o;

  auto graph_opt = [&](CLI::App* sub) {
    return sub->add_option("--graph", o.graph, "graph file")->required()->check(CLI::ExistingFile);
  };
  auto problem_opts = [&](CLI::App* sub) {
    sub->add_option("--constraints", o.constraints, "constraint file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--dialect", o.dialect, "graph families searched")
        ->check(CLI::IsMember({"alt", "orig", "both"}));
    sub->add_option("--max-n", o.max_n, "largest node count searched")->check(CLI::Range(1, 64));
  };

  CLI::App* sep = app.add_subcommand("sep", "test x _||_ y | z");
  graph_opt(sep);
  sep->add_option("--criterion", o.criterion, "1 path, 2 route, 3 augmented, 4 marginal")
      ->check(CLI::Range(1, 4));
  sep->add_option("--x", o.x)->required();
  sep->add_option("--y", o.y)->required();
  sep->add_option("--z", o.z);
  sep->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* equiv = app.add_subcommand("equiv-check", "compare the four separation criteria");
  auto* eg = equiv->add_option("--graph", o.graph, "graph file")->check(CLI::ExistingFile);
  auto* en = equiv->add_option("--all", o.all_n, "every alternative graph on this many nodes")
                 ->check(CLI::Range(1, 5));
  eg->excludes(en);
  equiv->require_option(1);

  CLI::App* mag = app.add_subcommand("magnify", "print the magnified graph");
  graph_opt(mag);

  CLI::App* inter = app.add_subcommand("intervene", "print the graph after intervening on x");
  graph_opt(inter);
  inter->add_option("--x", o.x)->required();

  CLI::App* rule = app.add_subcommand("rule", "check a do-calculus rule premise");
  graph_opt(rule);
  rule->add_option("--rule", o.rule)->required()->check(CLI::Range(1, 3));
  rule->add_option("--x", o.x);
  rule->add_option("--y", o.y);
  rule->add_option("--z", o.z);
  rule->add_option("--w", o.w);

  CLI::App* derive = app.add_subcommand("derive", "check every step of a derivation script");
  graph_opt(derive);
  derive->add_option("--script", o.script)->required()->check(CLI::ExistingFile);

  CLI::App* mv = app.add_subcommand("markov-verify", "check Markov property statements");
  graph_opt(mv);
  mv->add_option("--property", o.property)
      ->required()
      ->check(CLI::IsMember(
          {"ordered-local", "ordered-pairwise", "amp-local", "amp-pairwise", "amp-block"}));
  mv->add_option("--oracle", o.oracle)->check(CLI::IsMember({"graph", "gaussian"}));
  mv->add_option("--order", o.order, "comma-separated node ordering");
  mv->add_option("--seed", o.seed);
  mv->add_option("--tol", o.tol);

  CLI::App* sem = app.add_subcommand("sem-check", "partial correlations of a random linear SEM");
  graph_opt(sem);
  sem->add_option("--seed", o.seed);
  sem->add_option("--queries", o.queries)->check(CLI::IsMember({"all", "separated"}));
  sem->add_option("--tol", o.tol);

  CLI::App* lrn = app.add_subcommand("learn", "exact structure learning");
  problem_opts(lrn);
  lrn->add_option("--emit-asp", o.emit_asp, "also write the ASP program here");
  lrn->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* asp = app.add_subcommand("export-asp", "print the ASP learning program");
  problem_opts(asp);
  asp->add_option("--output", o.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sep->parsed()) return cmd_sep(o, out);
    if (equiv->parsed()) return cmd_equiv_check(o, out);
    if (mag->parsed()) return cmd_magnify(o, out);
    if (inter->parsed()) return cmd_intervene(o, out);
    if (rule->parsed()) return cmd_rule(o, out);
    if (derive->parsed()) return cmd_derive(o, out);
    if (mv->parsed()) return cmd_markov_verify(o, out);
    if (sem->parsed()) return cmd_sem_check(o, out);
    if (lrn->parsed()) return cmd_learn(o, out);
    if (asp->parsed()) return cmd_export_asp(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::NoFeasibleModel ? kNegative : kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}

}  // namespace admg::cli
