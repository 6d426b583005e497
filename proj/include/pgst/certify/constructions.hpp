#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgst/certify/certify.hpp"
#include "pgst/graph/partition.hpp"

namespace pgst::certify {

using graph::Graph;
using graph::Partition;
using graph::Vertex;

inline constexpr long kMaxGluePrime = 1000;

/// Characteristic polynomial of the path on m vertices with every vertex shifted by c:
/// phi_k = (t - c) phi_{k-1} - phi_{k-2}.
inline SparsePoly path_charpoly(std::size_t m, const SparsePoly& c = SparsePoly()) {
  const SparsePoly x = SparsePoly::t() - c;
  SparsePoly prev(1), cur = x;
  if (m == 0) return prev;
  for (std::size_t k = 2; k <= m; ++k) {
    SparsePoly next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace detail {

inline exact::PolyMatrix checked_cospectral(const Graph& g, Vertex u, Vertex v) {
  auto m = graph::to_matrix(g);
  if (!spectral::is_cospectral(m, u, v))
    throw NotCospectral(g.label(u) + " and " + g.label(v) + " are not cospectral");
  return m;
}

inline bool coprime(const SparsePoly& a, const SparsePoly& b) {
  return exact::poly_gcd_t(a, b).degree_t() == 0;
}

}  // namespace detail

/// Smallest prime p for which G \ {u, v} shares no eigenvalue with the interior of a path with
/// 2p edges, decided by an exact gcd. Returns q = 2p.
inline long choose_glue_length(const Graph& g, Vertex u, Vertex v) {
  auto m = detail::checked_cospectral(g, u, v);
  const SparsePoly h = spectral::phi_deleted(m, {u, v});
  if (h.coeff_t(0).is_zero())
    throw ZeroEigenvalueObstruction(
        "0 is an eigenvalue of G \\ {u, v}; every even path interior has eigenvalue 0. "
        "Use glue-pot or change-trace instead");
  for (long p = 2; p <= kMaxGluePrime; ++p) {
    if (!is_prime(p)) continue;
    if (detail::coprime(h, path_charpoly(static_cast<std::size_t>(2 * p - 1)))) return 2 * p;
  }
  throw DomainError("no prime p <= " + std::to_string(kMaxGluePrime) + " separates the spectra");
}

struct GluePotResult {
  Graph graph;
  long shift = 0;
};

/// Glues a k-vertex path whose vertices all carry the smallest integer shift c >= 0 that makes
/// its interior spectrum disjoint from G \ {u, v}.
inline GluePotResult build_glue_pot(const Graph& g, Vertex u, Vertex v, long k) {
  if (k < 3 || k % 2 == 0) throw DomainError("glue-pot needs an odd path length k >= 3");
  auto m = detail::checked_cospectral(g, u, v);
  const SparsePoly h = spectral::phi_deleted(m, {u, v});
  const auto interior = static_cast<std::size_t>(k - 2);
  for (long c = 0;; ++c) {
    if (!detail::coprime(h, path_charpoly(interior, SparsePoly(c)))) continue;
    Graph path = graph::path_graph(static_cast<std::size_t>(k));
    if (c != 0)
      for (Vertex x = 0; x < path.size(); ++x) path.add_to_potential(x, SparsePoly(c));
    return {graph::glue(g, u, v, path, 0, static_cast<Vertex>(k - 1)), c};
  }
}

struct ChangeTraceResult {
  Graph graph;
  Vertex center = 0;
};

/// Glues a k-vertex path with symbol sym2 on its central vertex.
inline ChangeTraceResult build_change_trace(const Graph& g, Vertex u, Vertex v, long k,
                                            const std::string& sym2) {
  if (k < 3 || k % 2 == 0) throw DomainError("change-trace needs an odd path length k >= 3");
  SparsePoly::check_symbol_name(sym2);
  if (g.contains(sym2)) throw DomainError("symbol " + sym2 + " already occurs in the graph");
  detail::checked_cospectral(g, u, v);
  Graph path = graph::path_graph(static_cast<std::size_t>(k));
  const auto mid = static_cast<Vertex>((k - 1) / 2);
  path.add_to_potential(mid, SparsePoly::symbol(sym2));
  // glue keeps G's numbering and appends the path interior x1, x2, ... in order.
  return {graph::glue(g, u, v, path, 0, static_cast<Vertex>(k - 1)), g.size() + mid - 1};
}

/// Coarsest equitable refinement of {{u, v}, {w}, rest}, or nullopt when it separates u and v
/// (then no equitable partition has both {u, v} and {w} as parts).
inline std::optional<Partition> equitable_with_parts(const exact::PolyMatrix& m, Vertex u, Vertex v,
                                                     std::optional<Vertex> w) {
  std::vector<std::vector<Vertex>> parts{{u, v}};
  std::vector<Vertex> rest;
  if (w) parts.push_back({*w});
  for (Vertex x = 0; x < m.dim(); ++x)
    if (x != u && x != v && (!w || x != *w)) rest.push_back(x);
  if (!rest.empty()) parts.push_back(rest);
  Partition p = graph::coarsest_equitable_refinement(m, Partition(m.dim(), parts));
  if (p.part_of(u) != p.part_of(v)) return std::nullopt;
  return p;
}

/// Pair potential sym1 on u, v and sym2 on w, for a graph with an equitable partition having
/// parts {u, v} and {w}. Both symbols stay symbolic; irreducibility is decided over Q(sym2).
inline Certificate certify_equitable(const Graph& g, Vertex u, Vertex v, Vertex w,
                                     const std::string& sym1, const std::string& sym2) {
  SparsePoly::check_symbol_name(sym1);
  SparsePoly::check_symbol_name(sym2);
  if (sym1 == sym2) throw DomainError("the two symbols must differ");
  if (g.contains(sym1) || g.contains(sym2)) throw DomainError("symbols must be fresh");
  if (u >= g.size() || v >= g.size() || w >= g.size()) throw StructuralError("vertex out of range");
  if (u == v || w == u || w == v) throw DomainError("u, v and w must be distinct");
  auto m = graph::to_matrix(g);
  auto partition = equitable_with_parts(m, u, v, w);
  if (!partition)
    throw DomainError("no equitable partition has parts {" + g.label(u) + ", " + g.label(v) +
                      "} and {" + g.label(w) + "}");
  auto perturbed = m.plus_diagonal({u, v}, SparsePoly::symbol(sym1))
                       .plus_diagonal({w}, SparsePoly::symbol(sym2));
  auto d = spectral::decompose(perturbed, u, v);
  auto f = detail::tr_deg_flags(d.p_plus, d.p_minus, sym1);
  const bool split = d.trace_plus.contains(sym2) && !d.trace_minus.contains(sym2);

  Certificate c;
  c.method = "equitable";
  c.evidence = detail::decomposition_json(d);
  c.evidence["symbol_uv"] = sym1;
  c.evidence["symbol_w"] = sym2;
  c.evidence["w"] = g.label(w);
  std::vector<std::vector<std::string>> parts;
  for (const auto& part : partition->parts()) {
    parts.emplace_back();
    for (auto x : part) parts.back().push_back(g.label(x));
  }
  c.evidence["partition"] = parts;
  c.evidence["gcd"] = f.gcd;
  c.evidence["strongly_cospectral"] = f.strong;
  c.evidence["irreducible_plus"] = f.irreducible_plus;
  c.evidence["irreducible_minus"] = f.irreducible_minus;
  c.evidence["trace_ratio_separated"] = f.separated;
  c.evidence["trace_split"] = split;
  auto failed = detail::failures(f);
  if (!split) failed.push_back(sym2 + " does not separate Tr P+ from Tr P-");
  c.verdict = failed.empty() ? Verdict::ProvenPGST : Verdict::Inconclusive;
  c.reason = failed.empty() ? "strongly cospectral, P+ and P- irreducible over Q(" + sym2 +
                                  "), " + sym2 + " appears in Tr P+ only"
                            : detail::join(failed);
  return c;
}

struct EquitableResult {
  Graph graph;
  Vertex w = 0;
  bool attached = false;
  Certificate certificate;
};

/// Uses an existing vertex w when some equitable partition has parts {u, v} and {w}; otherwise
/// attaches a new vertex w to u and v, which keeps an equitable partition with part {u, v}.
inline EquitableResult equitable_pipeline(const Graph& g, Vertex u, Vertex v,
                                          const std::string& sym1, const std::string& sym2) {
  auto m = graph::to_matrix(g);
  if (!equitable_with_parts(m, u, v, std::nullopt))
    throw DomainError("no equitable partition has {" + g.label(u) + ", " + g.label(v) + "} as a part");
  for (Vertex w = 0; w < g.size(); ++w) {
    if (w == u || w == v) continue;
    if (equitable_with_parts(m, u, v, w))
      return {g, w, false, certify_equitable(g, u, v, w, sym1, sym2)};
  }
  Graph extended = graph::attach_vertex(g, {u, v});
  const Vertex w = extended.size() - 1;
  return {extended, w, true, certify_equitable(extended, u, v, w, sym1, sym2)};
}

}  // namespace pgst::certify
