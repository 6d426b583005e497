#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/exact/poly_matrix.hpp"
#include "pgst/graph/graph.hpp"

namespace pgst::graph {

/// Disjoint cover of 0..n-1. Members are sorted and parts are ordered by least member.
class Partition {
 public:
  Partition() = default;

  Partition(std::size_t n, std::vector<std::vector<Vertex>> parts) : n_(n) {
    std::vector<bool> seen(n, false);
    for (auto& part : parts) {
      if (part.empty()) throw StructuralError("partition has an empty part");
      std::sort(part.begin(), part.end());
      for (auto v : part) {
        if (v >= n) throw StructuralError("partition member " + std::to_string(v) + " out of range");
        if (seen[v]) throw StructuralError("vertex " + std::to_string(v) + " appears in two parts");
        seen[v] = true;
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw StructuralError("partition does not cover every vertex");
    std::sort(parts.begin(), parts.end());
    parts_ = std::move(parts);
  }

  static Partition trivial(std::size_t n) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    return n == 0 ? Partition() : Partition(n, {all});
  }

  static Partition discrete(std::size_t n) {
    std::vector<std::vector<Vertex>> parts;
    for (Vertex v = 0; v < n; ++v) parts.push_back({v});
    return Partition(n, std::move(parts));
  }

  // Singletons for each listed vertex, everything else in one part.
  static Partition isolating(std::size_t n, const std::vector<Vertex>& singled) {
    std::set<Vertex> s(singled.begin(), singled.end());
    std::vector<std::vector<Vertex>> parts;
    std::vector<Vertex> rest;
    for (auto v : s) parts.push_back({v});
    for (Vertex v = 0; v < n; ++v)
      if (!s.count(v)) rest.push_back(v);
    if (!rest.empty()) parts.push_back(rest);
    return Partition(n, std::move(parts));
  }

  std::size_t size() const { return parts_.size(); }
  std::size_t vertex_count() const { return n_; }
  const std::vector<std::vector<Vertex>>& parts() const { return parts_; }
  const std::vector<Vertex>& operator[](std::size_t i) const { return parts_[i]; }

  std::size_t part_of(Vertex v) const {
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (std::binary_search(parts_[i].begin(), parts_[i].end(), v)) return i;
    throw StructuralError("vertex " + std::to_string(v) + " not in partition");
  }

  std::vector<std::size_t> part_index() const {
    std::vector<std::size_t> idx(n_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      for (auto v : parts_[i]) idx[v] = i;
    return idx;
  }

  // Every part of *this lies inside a part of other.
  bool refines(const Partition& other) const {
    auto idx = other.part_index();
    for (const auto& part : parts_)
      for (auto v : part)
        if (idx[v] != idx[part.front()]) return false;
    return true;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.n_ == b.n_ && a.parts_ == b.parts_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<Vertex>> parts_;
};

using QuotientMatrix = std::vector<std::vector<exact::SparsePoly>>;

namespace detail {

inline void check_cover(const exact::PolyMatrix& m, const Partition& p) {
  if (p.vertex_count() != m.dim())
    throw StructuralError("partition covers " + std::to_string(p.vertex_count()) +
                          " vertices, graph has " + std::to_string(m.dim()));
}

// Row sum from x into part j.
inline exact::SparsePoly row_sum(const exact::PolyMatrix& m, Vertex x, const std::vector<Vertex>& part) {
  exact::SparsePoly s;
  for (auto y : part) s += m.at(x, y);
  return s;
}

}  // namespace detail

inline bool verify_equitable(const exact::PolyMatrix& m, const Partition& p) {
  detail::check_cover(m, p);
  for (const auto& from : p.parts())
    for (const auto& into : p.parts()) {
      const auto first = detail::row_sum(m, from.front(), into);
      for (std::size_t k = 1; k < from.size(); ++k)
        if (!(detail::row_sum(m, from[k], into) == first)) return false;
    }
  return true;
}

inline bool verify_equitable(const Graph& g, const Partition& p) {
  return verify_equitable(to_matrix(g), p);
}

/// Colour refinement: vertices are split by (current part, row sums into every part) until
/// stable. Signatures are compared through canonical polynomial strings, which keeps symbolic
/// potentials exact.
inline Partition coarsest_equitable_refinement(const exact::PolyMatrix& m, const Partition& seed) {
  detail::check_cover(m, seed);
  const std::size_t n = m.dim();
  std::vector<std::size_t> colour = seed.part_index();
  std::size_t count = seed.size();
  while (true) {
    std::vector<std::map<std::size_t, exact::SparsePoly>> sums(n);
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y)
        if (!m.at(x, y).is_zero()) sums[x][colour[y]] += m.at(x, y);
    using Signature = std::pair<std::size_t, std::vector<std::pair<std::size_t, std::string>>>;
    std::map<Signature, std::size_t> ids;
    std::vector<std::size_t> next(n);
    // Ids are handed out in order of least member, so parts keep the least-member order.
    for (Vertex x = 0; x < n; ++x) {
      Signature sig{colour[x], {}};
      for (const auto& [c, s] : sums[x])
        if (!s.is_zero()) sig.second.emplace_back(c, s.to_string());
      auto [it, fresh] = ids.try_emplace(std::move(sig), ids.size());
      next[x] = it->second;
    }
    colour = std::move(next);
    if (ids.size() == count) break;
    count = ids.size();
  }
  std::vector<std::vector<Vertex>> parts(count);
  for (Vertex x = 0; x < n; ++x) parts[colour[x]].push_back(x);
  return Partition(n, std::move(parts));
}

inline Partition coarsest_equitable_refinement(const Graph& g, const Partition& seed) {
  return coarsest_equitable_refinement(to_matrix(g), seed);
}

/// k x k matrix of row sums from part i into part j. Entries are polynomial when potentials are.
inline QuotientMatrix quotient_matrix(const exact::PolyMatrix& m, const Partition& p) {
  if (!verify_equitable(m, p)) throw DomainError("partition is not equitable");
  QuotientMatrix q(p.size(), std::vector<exact::SparsePoly>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) q[i][j] = detail::row_sum(m, p[i].front(), p[j]);
  return q;
}

inline QuotientMatrix quotient_matrix(const Graph& g, const Partition& p) {
  return quotient_matrix(to_matrix(g), p);
}

/// n x k 0/1 matrix with Pi(x, i) = 1 iff x lies in part i.
inline std::vector<std::vector<int>> indicator_matrix(const Partition& p) {
  std::vector<std::vector<int>> pi(p.vertex_count(), std::vector<int>(p.size(), 0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (auto x : p[i]) pi[x][i] = 1;
  return pi;
}

}  // namespace pgst::graph
