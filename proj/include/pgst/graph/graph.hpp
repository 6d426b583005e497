#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/exact/poly_matrix.hpp"
#include "pgst/exact/sparse_poly.hpp"

namespace pgst::graph {

using exact::PolyMatrix;
using exact::Rational;
using exact::SparsePoly;
using Vertex = std::size_t;

/// Weighted undirected graph with per-vertex potentials. Values are immutable in practice:
/// every surgery below returns a new graph.
class Graph {
 public:
  using EdgeMap = std::map<std::pair<Vertex, Vertex>, Rational>;

  Graph() = default;
  explicit Graph(std::size_t n) : n_(n) {}

  std::size_t size() const { return n_; }
  const EdgeMap& edges() const { return edges_; }
  const std::map<Vertex, SparsePoly>& potentials() const { return potentials_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

  std::string label(Vertex v) const {
    check(v);
    return labels_.empty() ? std::to_string(v) : labels_[v];
  }

  // Resolves a label, or a decimal index when no label matches.
  Vertex vertex(const std::string& name) const {
    for (Vertex v = 0; v < labels_.size(); ++v)
      if (labels_[v] == name) return v;
    if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit)) {
      Vertex v = std::stoul(name);
      if (v < n_) return v;
    }
    throw StructuralError("no vertex named '" + name + "'");
  }

  Rational weight(Vertex a, Vertex b) const {
    check(a);
    check(b);
    auto it = edges_.find(key(a, b));
    return it == edges_.end() ? Rational(0) : it->second;
  }

  SparsePoly potential(Vertex v) const {
    check(v);
    auto it = potentials_.find(v);
    return it == potentials_.end() ? SparsePoly() : it->second;
  }

  // Adds w to the weight of edge ab; an edge whose weight reaches 0 disappears.
  Graph& add_edge(Vertex a, Vertex b, const Rational& w = 1) {
    check(a);
    check(b);
    if (a == b) throw StructuralError("self-loops belong in the potential, not the edge list");
    if (w == 0) return *this;
    auto& slot = edges_[key(a, b)];
    slot += w;
    if (slot == 0) edges_.erase(key(a, b));
    return *this;
  }

  Graph& add_to_potential(Vertex v, const SparsePoly& value) {
    check(v);
    if (!value.free_of_t()) throw DomainError("potential must not involve t");
    auto& slot = potentials_[v];
    slot += value;
    if (slot.is_zero()) potentials_.erase(v);
    return *this;
  }

  Graph& set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n_)
      throw StructuralError("label count does not match vertex count");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw StructuralError("duplicate vertex label");
    labels_ = std::move(labels);
    return *this;
  }

  std::vector<Vertex> neighbours(Vertex v) const {
    std::vector<Vertex> out;
    for (const auto& [e, w] : edges_) {
      if (e.first == v) out.push_back(e.second);
      if (e.second == v) out.push_back(e.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(const std::string& sym) const {
    return std::any_of(potentials_.begin(), potentials_.end(),
                       [&](const auto& kv) { return kv.second.contains(sym); });
  }

  std::vector<std::string> symbols() const {
    std::set<std::string> out;
    for (const auto& [v, p] : potentials_)
      for (const auto& s : p.used_symbols()) out.insert(s);
    return {out.begin(), out.end()};
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.potentials_ == b.potentials_ &&
           a.labels_ == b.labels_;
  }

 private:
  static std::pair<Vertex, Vertex> key(Vertex a, Vertex b) { return {std::min(a, b), std::max(a, b)}; }

  void check(Vertex v) const {
    if (v >= n_)
      throw StructuralError("vertex " + std::to_string(v) + " out of range (n = " +
                            std::to_string(n_) + ")");
  }

  std::size_t n_ = 0;
  EdgeMap edges_;
  std::map<Vertex, SparsePoly> potentials_;
  std::vector<std::string> labels_;
};

inline PolyMatrix to_matrix(const Graph& g) {
  std::vector<std::string> labels;
  for (Vertex v = 0; v < g.size(); ++v) labels.push_back(g.label(v));
  std::vector<SparsePoly> entries(g.size() * g.size());
  for (const auto& [e, w] : g.edges()) {
    entries[e.first * g.size() + e.second] = SparsePoly(w);
    entries[e.second * g.size() + e.first] = SparsePoly(w);
  }
  for (const auto& [v, p] : g.potentials()) entries[v * g.size() + v] = p;
  return PolyMatrix(g.size(), std::move(entries), std::move(labels));
}

/// M_S: rows and columns in S removed, labels of the survivors kept.
inline PolyMatrix delete_vertices(const PolyMatrix& m, const std::set<Vertex>& removed) {
  for (auto v : removed)
    if (v >= m.dim()) throw StructuralError("cannot delete vertex " + std::to_string(v));
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < m.dim(); ++v)
    if (!removed.count(v)) keep.push_back(v);
  std::vector<SparsePoly> entries;
  entries.reserve(keep.size() * keep.size());
  std::vector<std::string> labels;
  for (auto i : keep) {
    labels.push_back(m.labels()[i]);
    for (auto j : keep) entries.push_back(m.at(i, j));
  }
  return PolyMatrix(keep.size(), std::move(entries), std::move(labels));
}

inline Graph add_potential(const Graph& g, Vertex v, const SparsePoly& value) {
  Graph out = g;
  out.add_to_potential(v, value);
  return out;
}

/// 2-sum: G2's u2, v2 are identified with G1's u1, v1. G1 keeps its numbering; the other
/// vertices of G2 follow in their original order. Parallel edges add, as do potentials.
inline Graph glue(const Graph& g1, Vertex u1, Vertex v1, const Graph& g2, Vertex u2, Vertex v2) {
  if (u1 == v1 || u2 == v2) throw DomainError("gluing needs two distinct vertices on each side");
  if (u1 >= g1.size() || v1 >= g1.size() || u2 >= g2.size() || v2 >= g2.size())
    throw StructuralError("glue vertex out of range");
  std::vector<Vertex> image(g2.size());
  Vertex next = g1.size();
  for (Vertex x = 0; x < g2.size(); ++x) {
    if (x == u2) image[x] = u1;
    else if (x == v2) image[x] = v1;
    else image[x] = next++;
  }
  Graph out(next);
  for (const auto& [e, w] : g1.edges()) out.add_edge(e.first, e.second, w);
  for (const auto& [v, p] : g1.potentials()) out.add_to_potential(v, p);
  for (const auto& [e, w] : g2.edges()) out.add_edge(image[e.first], image[e.second], w);
  for (const auto& [v, p] : g2.potentials()) out.add_to_potential(image[v], p);
  if (g1.has_labels() || g2.has_labels()) {
    std::vector<std::string> labels;
    std::set<std::string> used;
    for (Vertex v = 0; v < g1.size(); ++v) {
      labels.push_back(g1.label(v));
      used.insert(labels.back());
    }
    for (Vertex x = 0; x < g2.size(); ++x) {
      if (x == u2 || x == v2) continue;
      std::string name = g2.has_labels() ? g2.label(x) : std::to_string(image[x]);
      while (used.count(name)) name += "'";
      used.insert(name);
      labels.push_back(name);
    }
    out.set_labels(std::move(labels));
  }
  return out;
}

/// Path on m vertices; endpoints are labelled u and v, interior vertices x1..x(m-2).
inline Graph path_graph(std::size_t m) {
  if (m < 2) throw DomainError("a path needs at least 2 vertices");
  Graph p(m);
  std::vector<std::string> labels{"u"};
  for (std::size_t i = 1; i + 1 < m; ++i) labels.push_back("x" + std::to_string(i));
  labels.push_back("v");
  for (Vertex i = 0; i + 1 < m; ++i) p.add_edge(i, i + 1);
  p.set_labels(std::move(labels));
  return p;
}

/// Attaches a path with q edges between u and v: q = 0 is G itself, q = 1 the edge uv.
inline Graph glue_path(const Graph& g, Vertex u, Vertex v, long q) {
  if (q < 0) throw DomainError("path length must be nonnegative");
  if (u == v) throw DomainError("glue_path needs distinct endpoints");
  if (q == 0) return g;
  if (q == 1) {
    Graph out = g;
    out.add_edge(u, v);
    return out;
  }
  return glue(g, u, v, path_graph(static_cast<std::size_t>(q) + 1), 0, static_cast<Vertex>(q));
}

/// New vertex adjacent (weight 1) to every vertex in `to`. Returns the graph; the new vertex
/// is the last index.
inline Graph attach_vertex(const Graph& g, const std::vector<Vertex>& to, const std::string& name = "w") {
  Graph out(g.size() + 1);
  for (const auto& [e, w] : g.edges()) out.add_edge(e.first, e.second, w);
  for (const auto& [v, p] : g.potentials()) out.add_to_potential(v, p);
  for (auto x : to) out.add_edge(x, g.size());
  if (g.has_labels()) {
    auto labels = g.labels();
    std::string label = name;
    while (std::find(labels.begin(), labels.end(), label) != labels.end()) label += "'";
    labels.push_back(label);
    out.set_labels(std::move(labels));
  }
  return out;
}

}  // namespace pgst::graph
