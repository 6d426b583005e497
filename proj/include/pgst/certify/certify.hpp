#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "pgst/certify/certificate.hpp"
#include "pgst/certify/relations.hpp"
#include "pgst/exact/linalg.hpp"
#include "pgst/graph/graph.hpp"
#include "pgst/spectral/cospectral.hpp"

namespace pgst::certify {

using exact::SparsePoly;
using spectral::CospectralDecomposition;

inline constexpr long kDefaultRelationBound = 2;
inline constexpr Real kDefaultRelationPrecision = 1e-9L;

namespace detail {

struct TrDegFlags {
  bool strong = false, irreducible_plus = false, irreducible_minus = false, separated = false;
  std::string gcd, why_plus, why_minus;
};

inline bool irreducible_in(const SparsePoly& p, const std::string& sym, std::string& why) {
  try {
    bool ok = exact::is_irreducible_linear_param(p, sym);
    if (!ok) why = "shares a factor with its " + sym + "-coefficient";
    return ok;
  } catch (const NotLinearInParam&) {
    why = "not linear in " + sym;
  } catch (const DomainError&) {
    why = "does not involve " + sym;
  }
  return false;
}

inline TrDegFlags tr_deg_flags(const SparsePoly& plus, const SparsePoly& minus, const std::string& sym) {
  TrDegFlags f;
  SparsePoly g = exact::poly_gcd_t(plus, minus);
  f.gcd = g.to_string();
  f.strong = g.degree_t() == 0;
  f.irreducible_plus = irreducible_in(plus, sym, f.why_plus);
  f.irreducible_minus = irreducible_in(minus, sym, f.why_minus);
  const SparsePoly tp = exact::poly_trace(plus), tm = exact::poly_trace(minus);
  f.separated = !(tp * static_cast<long>(minus.degree_t()) == tm * static_cast<long>(plus.degree_t()));
  return f;
}

inline std::vector<std::string> failures(const TrDegFlags& f) {
  std::vector<std::string> out;
  if (!f.strong) out.push_back("not strongly cospectral: gcd(P+, P-) = " + f.gcd);
  if (!f.irreducible_plus) out.push_back("P+ not certified irreducible (" + f.why_plus + ")");
  if (!f.irreducible_minus) out.push_back("P- not certified irreducible (" + f.why_minus + ")");
  if (!f.separated) out.push_back("Tr P+ / deg P+ = Tr P- / deg P-");
  return out;
}

inline std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

inline Json decomposition_json(const CospectralDecomposition& d) {
  return Json{{"p_plus", d.p_plus.to_string()},       {"p_minus", d.p_minus.to_string()},
              {"p_zero", d.p_zero.to_string()},       {"deg_plus", d.deg_plus},
              {"deg_minus", d.deg_minus},             {"deg_zero", d.deg_zero},
              {"trace_plus", d.trace_plus.to_string()}, {"trace_minus", d.trace_minus.to_string()}};
}

inline std::string real_to_string(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

inline Real real_from_string(const std::string& s) { return std::strtold(s.c_str(), nullptr); }

}  // namespace detail

/// Hypotheses of the trace/degree criterion, checked on a decomposition over Q(symbols).
/// Emits ProvenPGST or Inconclusive; the criterion has no converse.
inline Certificate certify_tr_deg(const CospectralDecomposition& d, const std::string& sym) {
  auto f = detail::tr_deg_flags(d.p_plus, d.p_minus, sym);
  Certificate c;
  c.method = "tr_deg";
  c.evidence = detail::decomposition_json(d);
  c.evidence["symbol"] = sym;
  c.evidence["gcd"] = f.gcd;
  c.evidence["strongly_cospectral"] = f.strong;
  c.evidence["irreducible_plus"] = f.irreducible_plus;
  c.evidence["irreducible_minus"] = f.irreducible_minus;
  c.evidence["trace_ratio_separated"] = f.separated;
  auto failed = detail::failures(f);
  c.verdict = failed.empty() ? Verdict::ProvenPGST : Verdict::Inconclusive;
  c.reason = failed.empty() ? "strongly cospectral, P+ and P- irreducible, Tr/deg differ"
                            : detail::join(failed);
  return c;
}

/// Graph form: sym must sit only on u and v, with equal values, and u, v must be cospectral
/// once sym is set to zero.
inline Certificate certify_tr_deg(const graph::Graph& g, graph::Vertex u, graph::Vertex v,
                                  const std::string& sym) {
  SparsePoly::check_symbol_name(sym);
  if (u >= g.size() || v >= g.size()) throw StructuralError("vertex out of range");
  if (u == v) throw DomainError("certify_tr_deg needs two distinct vertices");
  if (!g.potential(u).contains(sym)) throw DomainError("symbol " + sym + " is not on u");
  if (!(g.potential(u) == g.potential(v)))
    throw DomainError("potentials on u and v differ: " + g.potential(u).to_string() + " vs " +
                      g.potential(v).to_string());
  for (const auto& [x, p] : g.potentials())
    if (x != u && x != v && p.contains(sym))
      throw DomainError("symbol " + sym + " also appears at vertex " + g.label(x));
  auto m = graph::to_matrix(g);
  if (!spectral::is_cospectral(m.substitute(sym, 0), u, v))
    throw NotCospectral(g.label(u) + " and " + g.label(v) + " are not cospectral without " + sym);
  return certify_tr_deg(spectral::decompose(m, u, v), sym);
}

/// PGST needs strong cospectrality. Not cospectral: phi(M \ u) != phi(M \ v). Cospectral but
/// not strong: gcd(P+, P-) is nonconstant.
inline std::optional<Certificate> strong_cospectrality_obstruction(const exact::PolyMatrix& m,
                                                                   graph::Vertex u, graph::Vertex v) {
  Certificate c;
  c.verdict = Verdict::ProvenNoPGST;
  c.method = "not_strongly_cospectral";
  if (!spectral::is_cospectral(m, u, v)) {
    c.reason = "u and v are not cospectral";
    c.evidence["phi_minus_u"] = spectral::phi_deleted(m, {u}).to_string();
    c.evidence["phi_minus_v"] = spectral::phi_deleted(m, {v}).to_string();
    return c;
  }
  auto d = spectral::decompose(m, u, v);
  SparsePoly g = exact::poly_gcd_t(d.p_plus, d.p_minus);
  if (g.degree_t() == 0) return std::nullopt;
  c.reason = "u and v are cospectral but not strongly cospectral: gcd(P+, P-) = " + g.to_string();
  c.evidence = detail::decomposition_json(d);
  c.evidence["gcd"] = g.to_string();
  return c;
}

/// Equal odd degrees and equal traces give the relation l = 1, m = -1 with odd sum m.
inline std::optional<Certificate> parity_obstruction(const CospectralDecomposition& d) {
  if (d.deg_plus != d.deg_minus || d.deg_plus % 2 == 0) return std::nullopt;
  if (!(d.trace_plus == d.trace_minus)) return std::nullopt;
  Certificate c;
  c.verdict = Verdict::ProvenNoPGST;
  c.method = "parity";
  c.reason = "deg P+ = deg P- = " + std::to_string(d.deg_plus) +
             " is odd and Tr P+ = Tr P-, so l = 1, m = -1 is a relation with odd sum m";
  c.evidence = detail::decomposition_json(d);
  c.evidence["strongly_cospectral"] = exact::poly_gcd_t(d.p_plus, d.p_minus).degree_t() == 0;
  c.evidence["relation"] = Json{{"l", std::vector<long>(d.deg_plus, 1)},
                                {"m", std::vector<long>(d.deg_minus, -1)}};
  c.evidence["relation_value"] = (d.trace_plus - d.trace_minus).to_string();
  c.evidence["sum_l"] = static_cast<long>(d.deg_plus);
  c.evidence["sum_m"] = -static_cast<long>(d.deg_minus);
  return c;
}

/// Numerical falsification of the eigenvalue condition on a symbol-free decomposition. A
/// relation is kept only if it also holds to precision / 4 on Newton-polished roots.
inline std::optional<Certificate> heuristic_obstruction(const CospectralDecomposition& d,
                                                        long bound = kDefaultRelationBound,
                                                        Real precision = kDefaultRelationPrecision) {
  if (!d.p_plus.used_symbols().empty() || !d.p_minus.used_symbols().empty()) return std::nullopt;
  auto lambdas = real_roots(d.p_plus), mus = real_roots(d.p_minus);
  auto candidates = integer_relation_search(lambdas, mus, bound, precision);
  for (const auto& rel : candidates) {
    const Real value = relation_value(rel, lambdas, mus);
    if (std::abs(value) >= precision / 4) continue;
    Certificate c;
    c.verdict = Verdict::HeuristicObstruction;
    c.method = "integer_relation";
    c.reason = "integer relation with odd sum m holds numerically (" + std::to_string(candidates.size()) +
               " candidates within bound " + std::to_string(bound) + ")";
    c.evidence = detail::decomposition_json(d);
    std::vector<std::string> ls, ms;
    for (auto x : lambdas) ls.push_back(detail::real_to_string(x));
    for (auto x : mus) ms.push_back(detail::real_to_string(x));
    c.evidence["lambdas"] = ls;
    c.evidence["mus"] = ms;
    c.evidence["relation"] = Json{{"l", rel.l}, {"m", rel.m}};
    c.evidence["residual"] = detail::real_to_string(value);
    c.evidence["precision"] = detail::real_to_string(precision);
    c.evidence["bound"] = bound;
    return c;
  }
  return std::nullopt;
}

/// Recomputes every claim in a certificate from its evidence alone.
inline bool reverify(const Certificate& c) {
  const Json& e = c.evidence;
  auto poly = [&](const char* key) { return exact::parse_poly(e.at(key).get<std::string>()); };
  try {
    if (c.method == "tr_deg" || c.method == "equitable") {
      const SparsePoly plus = poly("p_plus"), minus = poly("p_minus");
      if (!(exact::poly_trace(plus) == poly("trace_plus")) ||
          !(exact::poly_trace(minus) == poly("trace_minus")))
        return false;
      const std::string sym = e.at(c.method == "tr_deg" ? "symbol" : "symbol_uv").get<std::string>();
      auto f = detail::tr_deg_flags(plus, minus, sym);
      if (f.strong != e.at("strongly_cospectral").get<bool>() ||
          f.irreducible_plus != e.at("irreducible_plus").get<bool>() ||
          f.irreducible_minus != e.at("irreducible_minus").get<bool>() ||
          f.separated != e.at("trace_ratio_separated").get<bool>())
        return false;
      bool all = f.strong && f.irreducible_plus && f.irreducible_minus && f.separated;
      if (c.method == "equitable") {
        const std::string w = e.at("symbol_w").get<std::string>();
        bool split = exact::poly_trace(plus).contains(w) && !exact::poly_trace(minus).contains(w);
        if (split != e.at("trace_split").get<bool>()) return false;
        all = all && split;
      }
      return all == (c.verdict == Verdict::ProvenPGST);
    }
    if (c.method == "not_strongly_cospectral") {
      if (c.verdict != Verdict::ProvenNoPGST) return false;
      if (e.contains("phi_minus_u")) return !(poly("phi_minus_u") == poly("phi_minus_v"));
      const SparsePoly g = exact::poly_gcd_t(poly("p_plus"), poly("p_minus"));
      return g.degree_t() > 0 && g == poly("gcd");
    }
    if (c.method == "parity") {
      const SparsePoly plus = poly("p_plus"), minus = poly("p_minus");
      const auto l = e.at("relation").at("l").get<std::vector<long>>();
      const auto m = e.at("relation").at("m").get<std::vector<long>>();
      if (l.size() != plus.degree_t() || m.size() != minus.degree_t()) return false;
      long sl = 0, sm = 0;
      for (auto x : l) {
        if (x != 1) return false;
        sl += x;
      }
      for (auto x : m) {
        if (x != -1) return false;
        sm += x;
      }
      // With l = 1 and m = -1 the relation value is Tr P+ - Tr P-.
      const SparsePoly value = exact::poly_trace(plus) - exact::poly_trace(minus);
      return c.verdict == Verdict::ProvenNoPGST && value.is_zero() && sl + sm == 0 &&
             (sm % 2 != 0);
    }
    if (c.method == "integer_relation") {
      std::vector<Real> lambdas, mus;
      for (const auto& s : e.at("lambdas")) lambdas.push_back(detail::real_from_string(s));
      for (const auto& s : e.at("mus")) mus.push_back(detail::real_from_string(s));
      Relation rel;
      rel.l = e.at("relation").at("l").get<std::vector<long>>();
      rel.m = e.at("relation").at("m").get<std::vector<long>>();
      if (rel.l.size() != lambdas.size() || rel.m.size() != mus.size()) return false;
      const Real precision = detail::real_from_string(e.at("precision").get<std::string>());
      const long bound = e.at("bound").get<long>();
      return c.verdict == Verdict::HeuristicObstruction && certify::detail::admissible(rel, bound) &&
             std::abs(relation_value(rel, lambdas, mus)) < precision / 4;
    }
  } catch (const std::exception&) {
    return false;
  }
  return c.verdict == Verdict::Inconclusive;
}

}  // namespace pgst::certify
