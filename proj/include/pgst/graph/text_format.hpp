#pragma once

// Line-oriented graph files:
//
//   n <count>            vertex count, must come first
//   l <i> <name>         optional vertex label
//   e <i> <j> [weight]   undirected edge, weight defaults to 1 (rationals like 3/2 allowed)
//   p <i> <value>        potential; the rest of the line is a polynomial in the symbols
//   # ...                comment to end of line

#include <sstream>
#include <string>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/graph/graph.hpp"

namespace pgst::graph {

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_n = false;
  Graph g;
  std::vector<std::string> labels;
  auto fail = [&](const std::string& why) -> void {
    throw ParseError("line " + std::to_string(line_no) + ": " + why);
  };
  auto index = [&](const std::string& tok) -> Vertex {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      fail("expected a vertex index, got '" + tok + "'");
    Vertex v = std::stoul(tok);
    if (v >= g.size()) fail("vertex " + tok + " out of range");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string kind;
    if (!(words >> kind)) continue;
    if (kind == "n") {
      if (have_n) fail("duplicate 'n' statement");
      std::string count, extra;
      if (!(words >> count) || (words >> extra)) fail("expected 'n <count>'");
      if (count.find_first_not_of("0123456789") != std::string::npos) fail("bad vertex count");
      g = Graph(std::stoul(count));
      labels.assign(g.size(), "");
      have_n = true;
      continue;
    }
    if (!have_n) fail("'n <count>' must come first");
    if (kind == "e") {
      std::string a, b, w, extra;
      if (!(words >> a >> b)) fail("expected 'e <i> <j> [weight]'");
      Vertex i = index(a), j = index(b);
      if (i == j) fail("self-loop; put diagonal values in a 'p' statement");
      exact::Rational weight = 1;
      if (words >> w) {
        try {
          weight = exact::parse_rational(w);
        } catch (const ParseError& e) {
          fail(e.what());
        }
        if (words >> extra) fail("trailing text after edge weight");
      }
      if (weight == 0) fail("edge weight must be nonzero");
      g.add_edge(i, j, weight);
    } else if (kind == "p") {
      std::string a;
      if (!(words >> a)) fail("expected 'p <i> <value>'");
      Vertex i = index(a);
      std::string rest;
      std::getline(words, rest);
      if (rest.find_first_not_of(" \t\r") == std::string::npos) fail("missing potential value");
      SparsePoly value;
      try {
        value = exact::parse_poly(rest);
      } catch (const ParseError& e) {
        fail(e.what());
      }
      if (!value.free_of_t()) fail("potential must not involve t");
      try {
        g.add_to_potential(i, value);
      } catch (const DomainError& e) {
        fail(e.what());
      }
    } else if (kind == "l") {
      std::string a, name, extra;
      if (!(words >> a >> name) || (words >> extra)) fail("expected 'l <i> <name>'");
      labels[index(a)] = name;
    } else {
      fail("unknown statement '" + kind + "'");
    }
  }
  if (!have_n) throw ParseError("missing 'n <count>' statement");
  bool any_label = std::any_of(labels.begin(), labels.end(), [](auto& s) { return !s.empty(); });
  if (any_label) {
    for (Vertex v = 0; v < labels.size(); ++v)
      if (labels[v].empty()) labels[v] = std::to_string(v);
    try {
      g.set_labels(labels);
    } catch (const StructuralError& e) {
      throw ParseError(e.what());
    }
  }
  return g;
}

/// Canonical serialisation: n, labels, edges in (i,j) order, then potentials by vertex.
inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.size() << "\n";
  if (g.has_labels())
    for (Vertex v = 0; v < g.size(); ++v) out << "l " << v << " " << g.label(v) << "\n";
  for (const auto& [e, w] : g.edges()) {
    out << "e " << e.first << " " << e.second;
    if (w != 1) out << " " << w.get_str();
    out << "\n";
  }
  for (const auto& [v, p] : g.potentials()) out << "p " << v << " " << p.to_string() << "\n";
  return out.str();
}

}  // namespace pgst::graph
