#pragma once

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pgst/certify/constructions.hpp"
#include "pgst/graph/text_format.hpp"
#include "pgst/walk/simulate.hpp"

namespace pgst::cli {

using certify::Certificate;
using certify::Json;
using graph::Graph;
using graph::Vertex;

inline constexpr int kSchemaVersion = 1;
inline constexpr double kDefaultSurrogate = 3.14159265358979323846;

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("sha256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

/// Numeric stand-ins for symbols: a default for every symbol plus per-symbol overrides.
struct SymbolValues {
  std::optional<double> fallback;
  std::map<std::string, double> named;

  std::map<std::string, double> resolve(const std::vector<std::string>& symbols) const {
    std::map<std::string, double> out;
    for (const auto& s : symbols) {
      auto it = named.find(s);
      if (it != named.end()) out[s] = it->second;
      else if (fallback) out[s] = *fallback;
      else
        throw DomainError("symbol " + s + " needs a numeric value; pass --potential-value " + s +
                          "=<number> or --potential-value <number>");
    }
    return out;
  }
};

inline double parse_real(const std::string& text) {
  if (text == "pi") return kDefaultSurrogate;
  if (text == "e") return std::exp(1.0);
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash != std::string::npos) {
      double num = std::stod(text.substr(0, slash), &used);
      if (used != slash) throw ParseError("");
      const std::string den_text = text.substr(slash + 1);
      double den = std::stod(den_text, &used);
      if (used != den_text.size() || den == 0) throw ParseError("");
      return num / den;
    }
    double x = std::stod(text, &used);
    if (used != text.size()) throw ParseError("");
    return x;
  } catch (const std::exception&) {
    throw ParseError("cannot read numeric value '" + text + "'");
  }
}

inline SymbolValues parse_symbol_values(const std::vector<std::string>& items) {
  SymbolValues out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      out.fallback = parse_real(item);
    } else {
      std::string name = item.substr(0, eq);
      if (!exact::SparsePoly::valid_symbol_name(name)) throw ParseError("bad symbol name '" + name + "'");
      out.named[name] = parse_real(item.substr(eq + 1));
    }
  }
  return out;
}

/// The one symbol that sits on u and v with equal potentials and nowhere else, if any.
inline std::optional<std::string> pair_symbol(const Graph& g, Vertex u, Vertex v) {
  const auto& pu = g.potential(u);
  if (!(pu == g.potential(v))) return std::nullopt;
  auto syms = pu.used_symbols();
  if (syms.size() != 1) return std::nullopt;
  for (const auto& [x, p] : g.potentials())
    if (x != u && x != v && p.contains(syms[0])) return std::nullopt;
  return syms[0];
}

struct NumericOptions {
  double t_max = 100;
  std::size_t steps = 20001;
  SymbolValues values;
};

inline Json numeric_summary(const Graph& g, Vertex u, Vertex v, const NumericOptions& opt,
                            walk::FidelityScan* scan_out = nullptr) {
  const auto symbols = g.symbols();
  const auto values = opt.values.resolve(symbols);
  auto spec = walk::sym_eig(walk::numeric_matrix(graph::to_matrix(g), values));
  auto scan = walk::fidelity_scan(spec, u, v, opt.t_max, opt.steps);
  Json out{{"t_max", opt.t_max},
           {"steps", opt.steps},
           {"best_time", scan.best_time},
           {"best_fidelity", scan.best_fidelity},
           {"pgst_ceiling", walk::pgst_ceiling(spec, u, v)},
           {"strongly_cospectral", walk::numeric_strong_cospectral(spec, u, v)}};
  Json vals = Json::object();
  for (const auto& [s, x] : values) vals[s] = x;
  out["symbol_values"] = vals;
  if (scan_out) *scan_out = std::move(scan);
  return out;
}

/// Exact pipeline: strong cospectrality, parity, tr/deg when a pair symbol exists, and the
/// numeric relation search when the matrix is symbol-free.
inline Json analysis(const Graph& g, Vertex u, Vertex v) {
  if (u >= g.size() || v >= g.size()) throw StructuralError("vertex out of range");
  if (u == v) throw DomainError("u and v must differ");
  const auto m = graph::to_matrix(g);
  Json out;
  out["u"] = g.label(u);
  out["v"] = g.label(v);
  const bool cospectral = spectral::is_cospectral(m, u, v);
  out["cospectral"] = cospectral;
  out["decomposition"] = nullptr;
  if (!cospectral) {
    out["strongly_cospectral"] = false;
    out["certificate"] = certify::strong_cospectrality_obstruction(m, u, v)->to_json();
    return out;
  }
  const auto d = spectral::decompose(m, u, v);
  out["decomposition"] = certify::detail::decomposition_json(d);
  const bool strong = spectral::is_strongly_cospectral(d);
  out["strongly_cospectral"] = strong;

  std::optional<Certificate> cert;
  if (!strong) cert = certify::strong_cospectrality_obstruction(m, u, v);
  if (!cert) cert = certify::parity_obstruction(d);
  auto sym = pair_symbol(g, u, v);
  std::optional<Certificate> tr;
  if (!cert && sym) {
    tr = certify::certify_tr_deg(g, u, v, *sym);
    if (tr->verdict == certify::Verdict::ProvenPGST) cert = tr;
  }
  if (!cert && g.symbols().empty()) cert = certify::heuristic_obstruction(d);
  if (!cert && tr) cert = tr;
  if (!cert) {
    Certificate c;
    c.method = "none";
    c.reason = g.symbols().empty()
                   ? "no obstruction found; the tr/deg criterion needs a symbolic potential on u and v"
                   : "no symbol sits on u and v alone with equal values; the tr/deg criterion does not apply";
    c.evidence = certify::detail::decomposition_json(d);
    cert = c;
  }
  out["certificate"] = cert->to_json();
  return out;
}

}  // namespace pgst::cli
