#pragma once

#include <string>
#include <utility>

#include "pgst/errors.hpp"
#include "pgst/exact/linalg.hpp"
#include "pgst/exact/poly_matrix.hpp"
#include "pgst/graph/graph.hpp"

#ifndef PGST_CROSS_CHECK
#define PGST_CROSS_CHECK 0
#endif

namespace pgst::spectral {

using exact::PolyMatrix;
using exact::PolyVector;
using exact::Rational;
using exact::SparsePoly;
using Index = std::size_t;

/// phi_M = p_plus * p_minus * p_zero for a cospectral pair.
struct CospectralDecomposition {
  SparsePoly p_plus, p_minus, p_zero;
  std::size_t deg_plus = 0, deg_minus = 0, deg_zero = 0;
  SparsePoly trace_plus, trace_minus;
  SparsePoly phi;
};

struct TraceMembership {
  bool plus_in_base = false;
  bool minus_in_base = false;
};

/// Characteristic polynomial with the empty matrix mapped to 1.
inline SparsePoly phi(const PolyMatrix& m) { return m.dim() == 0 ? SparsePoly(1) : exact::charpoly(m); }

inline SparsePoly phi_deleted(const PolyMatrix& m, std::initializer_list<Index> removed) {
  return phi(graph::delete_vertices(m, std::set<Index>(removed)));
}

/// M + value * (D_u + D_v).
inline PolyMatrix with_pair_potential(const PolyMatrix& m, Index u, Index v, const SparsePoly& value) {
  return m.plus_diagonal({u, v}, value);
}

namespace detail {

inline void check_pair(const PolyMatrix& m, Index u, Index v) {
  if (u >= m.dim() || v >= m.dim()) throw StructuralError("vertex index out of range");
  if (u == v) throw DomainError("cospectrality needs two distinct vertices");
}

inline PolyVector pair_vector(std::size_t n, Index u, Index v, int sign) {
  PolyVector z(n);
  z[u] = SparsePoly(1);
  z[v] = SparsePoly(sign);
  return z;
}

// M^k(u,u) = M^k(v,v) for k <= 2n.
inline bool walk_counts_agree(const PolyMatrix& m, Index u, Index v) {
  PolyVector x = exact::unit_vector(m.dim(), u), y = exact::unit_vector(m.dim(), v);
  for (std::size_t k = 0; k <= 2 * m.dim(); ++k) {
    if (!(x[u] == y[v])) return false;
    x = m * x;
    y = m * y;
  }
  return true;
}

// <e_u - e_v, M^k (e_u + e_v)> = 0 for k <= n.
inline bool krylov_orthogonal(const PolyMatrix& m, Index u, Index v) {
  PolyVector z = pair_vector(m.dim(), u, v, 1);
  for (std::size_t k = 0; k <= m.dim(); ++k) {
    if (!(z[u] - z[v]).is_zero()) return false;
    z = m * z;
  }
  return true;
}

}  // namespace detail

/// phi(M_u) = phi(M_v). Test builds also run the walk-count and Krylov-orthogonality forms
/// of the same condition and abort if the three disagree.
inline bool is_cospectral(const PolyMatrix& m, Index u, Index v) {
  detail::check_pair(m, u, v);
  const bool by_charpoly = phi_deleted(m, {u}) == phi_deleted(m, {v});
  if (PGST_CROSS_CHECK) {
    const bool by_walks = detail::walk_counts_agree(m, u, v);
    const bool by_krylov = detail::krylov_orthogonal(m, u, v);
    if (by_walks != by_charpoly || by_krylov != by_charpoly)
      throw InternalError("cospectrality tests disagree (charpoly " + std::to_string(by_charpoly) +
                          ", walks " + std::to_string(by_walks) + ", krylov " +
                          std::to_string(by_krylov) + ")");
  }
  return by_charpoly;
}

inline CospectralDecomposition decompose(const PolyMatrix& m, Index u, Index v) {
  if (!is_cospectral(m, u, v))
    throw NotCospectral(m.labels()[u] + " and " + m.labels()[v] + " are not cospectral");
  CospectralDecomposition d;
  d.phi = exact::charpoly(m);
  d.p_plus = exact::krylov_min_poly(m, detail::pair_vector(m.dim(), u, v, 1));
  d.p_minus = exact::krylov_min_poly(m, detail::pair_vector(m.dim(), u, v, -1));
  auto zero = d.phi.try_divide(d.p_plus * d.p_minus);
  if (!zero)
    throw InternalError("P+ * P- does not divide the characteristic polynomial; phi = " +
                        d.phi.to_string());
  d.p_zero = *zero;
  d.deg_plus = d.p_plus.degree_t();
  d.deg_minus = d.p_minus.degree_t();
  d.deg_zero = d.p_zero.degree_t();
  if (d.deg_plus + d.deg_minus + d.deg_zero != m.dim() || !d.p_zero.is_monic_t())
    throw InternalError("decomposition degrees do not add up to n");
  d.trace_plus = exact::poly_trace(d.p_plus);
  d.trace_minus = exact::poly_trace(d.p_minus);
  return d;
}

inline bool is_strongly_cospectral(const CospectralDecomposition& d) {
  return exact::poly_gcd_t(d.p_plus, d.p_minus).degree_t() == 0;
}

inline bool is_strongly_cospectral(const PolyMatrix& m, Index u, Index v) {
  if (!is_cospectral(m, u, v)) return false;
  return is_strongly_cospectral(decompose(m, u, v));
}

/// phi_{M + sym D_uv} - (phi_M - 2 sym phi_{M_u} + sym^2 phi_{M_uv}); zero for cospectral u, v.
inline SparsePoly q_expansion_residual(const PolyMatrix& m, Index u, Index v, const std::string& sym) {
  exact::SparsePoly::check_symbol_name(sym);
  if (m.contains(sym)) throw DomainError("symbol " + sym + " already occurs in the matrix");
  if (!is_cospectral(m, u, v)) throw NotCospectral("q-expansion needs a cospectral pair");
  const SparsePoly q = SparsePoly::symbol(sym);
  const SparsePoly lhs = phi(with_pair_potential(m, u, v, q));
  const SparsePoly rhs = phi(m) - q * phi_deleted(m, {u}) * 2 + q * q * phi_deleted(m, {u, v});
  return lhs - rhs;
}

inline TraceMembership trace_param_membership(const CospectralDecomposition& d, const std::string& sym) {
  const SparsePoly q = SparsePoly::symbol(sym);
  return {!(d.trace_plus - q).contains(sym), !(d.trace_minus - q).contains(sym)};
}

}  // namespace pgst::spectral
