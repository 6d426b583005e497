#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pgst/cli/fixtures.hpp"
#include "pgst/cli/report.hpp"

namespace pgst::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kParse = 1;
inline constexpr int kPrecondition = 2;
inline constexpr int kInternal = 3;
}  // namespace exit_code

struct Input {
  std::string source;
  std::string text;
  Graph graph;
};

/// `@name` is an embedded fixture, anything else a path to a graph file.
inline Input load_input(const std::string& source) {
  Input in;
  in.source = source;
  if (!source.empty() && source[0] == '@') {
    in.text = fixture(source).text;
  } else {
    std::ifstream file(source, std::ios::binary);
    if (!file) throw ParseError("cannot read graph file '" + source + "'");
    std::ostringstream ss;
    ss << file.rdbuf();
    in.text = ss.str();
  }
  in.graph = graph::parse_graph(in.text);
  return in;
}

inline exact::SparsePoly parse_potential(const std::string& text) {
  exact::SparsePoly p;
  try {
    p = exact::parse_poly(text);
  } catch (const Error& e) {
    throw ParseError("bad potential '" + text + "': " + e.what());
  }
  if (p.degree_t() > 0) throw ParseError("potential '" + text + "' involves t");
  if (p.used_symbols().size() > 1) throw DomainError("potential '" + text + "' involves more than one symbol");
  return p;
}

inline Json header(const std::string& command, const Input& in) {
  return Json{{"schema", kSchemaVersion},
              {"command", command},
              {"input", Json{{"source", in.source}, {"sha256", sha256_hex(in.text)}}}};
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

struct Options {
  std::string graph, u, v;
  std::string potential;
  bool simulate = false;
  double t_max = 100;
  std::size_t steps = 20001;
  std::vector<std::string> potential_values;
  std::string q = "auto", out_file, csv_file, sym = "Qp", sym1 = "Q1", sym2 = "Q2", w;
  long k = 0;
  std::string kind, fixture_name;
  bool list = false;
};

inline Graph with_potential(Graph g, Vertex u, Vertex v, const std::string& potential) {
  if (potential.empty()) return g;
  auto p = parse_potential(potential);
  for (const auto& s : p.used_symbols())
    if (g.contains(s)) throw DomainError("symbol " + s + " already occurs in the graph");
  g.add_to_potential(u, p);
  g.add_to_potential(v, p);
  return g;
}

inline NumericOptions numeric_options(const Options& o, bool default_surrogate) {
  NumericOptions n;
  n.t_max = o.t_max;
  n.steps = o.steps;
  n.values = parse_symbol_values(o.potential_values);
  if (default_surrogate && !n.values.fallback) n.values.fallback = kDefaultSurrogate;
  return n;
}

inline int cmd_analyze(const Options& o, std::ostream& out) {
  auto in = load_input(o.graph);
  const Vertex u = in.graph.vertex(o.u), v = in.graph.vertex(o.v);
  Graph g = with_potential(in.graph, u, v, o.potential);
  Json report = header("analyze", in);
  report["potential"] = o.potential.empty() ? Json(nullptr) : Json(o.potential);
  report.update(analysis(g, u, v));
  if (o.simulate) report["numeric"] = numeric_summary(g, u, v, numeric_options(o, true));
  emit(out, report);
  return exit_code::kOk;
}

inline int cmd_construct(const Options& o, std::ostream& out) {
  auto in = load_input(o.graph);
  const Vertex u = in.graph.vertex(o.u), v = in.graph.vertex(o.v);
  Json report = header("construct", in);
  report["kind"] = o.kind;
  Json params = Json::object();
  Graph built;
  Vertex cu = u, cv = v;
  std::optional<Certificate> fixed;
  const std::string potential = o.potential.empty() ? "Q" : o.potential;

  if (o.kind == "glue-path") {
    long q = 0;
    if (o.q == "auto") {
      q = certify::choose_glue_length(in.graph, u, v);
    } else {
      try {
        std::size_t used = 0;
        q = std::stol(o.q, &used);
        if (used != o.q.size()) throw ParseError("");
      } catch (const std::exception&) {
        throw ParseError("--q must be 'auto' or an integer, got '" + o.q + "'");
      }
    }
    params["q"] = q;
    built = with_potential(graph::glue_path(in.graph, u, v, q), u, v, potential);
  } else if (o.kind == "glue-pot") {
    auto r = certify::build_glue_pot(in.graph, u, v, o.k);
    params["k"] = o.k;
    params["shift"] = r.shift;
    built = with_potential(r.graph, u, v, potential);
  } else if (o.kind == "change-trace") {
    auto r = certify::build_change_trace(in.graph, u, v, o.k, o.sym);
    params["k"] = o.k;
    params["sym"] = o.sym;
    params["center"] = r.graph.label(r.center);
    built = with_potential(r.graph, u, v, potential);
  } else if (o.kind == "equitable") {
    if (!o.w.empty()) {
      const Vertex w = in.graph.vertex(o.w);
      fixed = certify::certify_equitable(in.graph, u, v, w, o.sym1, o.sym2);
      params["w"] = in.graph.label(w);
      params["attached"] = false;
      built = in.graph;
      built.add_to_potential(u, exact::SparsePoly::symbol(o.sym1));
      built.add_to_potential(v, exact::SparsePoly::symbol(o.sym1));
      built.add_to_potential(w, exact::SparsePoly::symbol(o.sym2));
    } else {
      auto r = certify::equitable_pipeline(in.graph, u, v, o.sym1, o.sym2);
      fixed = r.certificate;
      params["w"] = r.graph.label(r.w);
      params["attached"] = r.attached;
      built = r.graph;
      built.add_to_potential(u, exact::SparsePoly::symbol(o.sym1));
      built.add_to_potential(v, exact::SparsePoly::symbol(o.sym1));
      built.add_to_potential(r.w, exact::SparsePoly::symbol(o.sym2));
    }
    params["sym1"] = o.sym1;
    params["sym2"] = o.sym2;
  } else {
    throw ParseError("unknown construction '" + o.kind + "'");
  }
  if (o.kind != "equitable") report["potential"] = potential;
  report["parameters"] = params;
  const std::string text = graph::serialize_graph(built);
  report["graph"] = text;
  report.update(analysis(built, cu, cv));
  if (fixed) report["certificate"] = fixed->to_json();
  if (o.simulate) report["numeric"] = numeric_summary(built, cu, cv, numeric_options(o, true));
  if (!o.out_file.empty()) {
    std::ofstream file(o.out_file, std::ios::binary);
    if (!file) throw DomainError("cannot write '" + o.out_file + "'");
    file << text;
  }
  emit(out, report);
  return exit_code::kOk;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
  auto in = load_input(o.graph);
  const Vertex u = in.graph.vertex(o.u), v = in.graph.vertex(o.v);
  Graph g = with_potential(in.graph, u, v, o.potential);
  walk::FidelityScan scan;
  Json report = header("simulate", in);
  report["u"] = g.label(u);
  report["v"] = g.label(v);
  report["potential"] = o.potential.empty() ? Json(nullptr) : Json(o.potential);
  report["numeric"] = numeric_summary(g, u, v, numeric_options(o, false), &scan);
  if (!o.csv_file.empty()) {
    if (o.csv_file == "-") {
      walk::write_csv(out, scan);
      return exit_code::kOk;
    }
    std::ofstream file(o.csv_file, std::ios::binary);
    if (!file) throw DomainError("cannot write '" + o.csv_file + "'");
    walk::write_csv(file, scan);
  }
  emit(out, report);
  return exit_code::kOk;
}

inline int cmd_fixture(const Options& o, std::ostream& out) {
  if (o.list || o.fixture_name.empty()) {
    for (const auto& f : fixtures()) {
      out << '@' << f.name << "  u=" << f.u << " v=" << f.v;
      if (f.w) out << " w=" << *f.w;
      out << "  " << f.description << '\n';
    }
    return exit_code::kOk;
  }
  out << fixture(o.fixture_name).text;
  return exit_code::kOk;
}

/// Runs one command line; args excludes the program name. Diagnostics go to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certificates and quantum-walk simulation for pretty good state transfer", "pgst"};
  app.require_subcommand(1);
  Options o;

  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("graph", o.graph, "graph file, or @name for an embedded fixture")->required();
    sub->add_option("--u", o.u, "first vertex (label or index)")->required();
    sub->add_option("--v", o.v, "second vertex (label or index)")->required();
    sub->add_option("--potential", o.potential, "potential added at u and v: a symbol or a rational");
    sub->add_option("--tmax", o.t_max, "simulation horizon")->check(CLI::PositiveNumber);
    sub->add_option("--steps", o.steps, "time grid points")->check(CLI::Range(2, 100000000));
    sub->add_option("--potential-value", o.potential_values,
                    "numeric value for symbols: <number> for all, or SYM=<number>; pi and e accepted");
  };

  auto* analyze = app.add_subcommand("analyze", "exact analysis of a vertex pair");
  add_pair(analyze);
  analyze->add_flag("--simulate", o.simulate, "append a numeric summary");

  auto* construct = app.add_subcommand("construct", "build a graph from one of the constructions and certify it");
  construct->add_option("kind", o.kind, "glue-path, glue-pot, change-trace or equitable")
      ->required()
      ->check(CLI::IsMember({"glue-path", "glue-pot", "change-trace", "equitable"}));
  add_pair(construct);
  construct->add_option("--q", o.q, "path length for glue-path, or auto");
  construct->add_option("--k", o.k, "path vertex count for glue-pot and change-trace");
  construct->add_option("--sym", o.sym, "symbol on the central path vertex for change-trace");
  construct->add_option("--w", o.w, "vertex carrying the second symbol for equitable");
  construct->add_option("--sym1", o.sym1, "symbol on u and v for equitable");
  construct->add_option("--sym2", o.sym2, "symbol on w for equitable");
  construct->add_option("--out", o.out_file, "write the constructed graph here");
  construct->add_flag("--simulate", o.simulate, "append a numeric summary");

  auto* simulate = app.add_subcommand("simulate", "fidelity scan of |U(t)_{u,v}|");
  add_pair(simulate);
  simulate->add_option("--csv", o.csv_file, "write the series as CSV (t, fidelity); - for standard output");

  auto* fixture_cmd = app.add_subcommand("fixture", "print an embedded fixture in the text format");
  fixture_cmd->add_option("name", o.fixture_name, "fixture name, with or without @");
  fixture_cmd->add_flag("--list", o.list, "list the fixtures");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_code::kOk : exit_code::kParse;
  }

  try {
    if (*analyze) return cmd_analyze(o, out);
    if (*construct) return cmd_construct(o, out);
    if (*simulate) return cmd_simulate(o, out);
    return cmd_fixture(o, out);
  } catch (const ZeroEigenvalueObstruction& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kPrecondition;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kPrecondition;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_code::kInternal;
  }
}

}  // namespace pgst::cli
