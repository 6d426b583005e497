#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/exact/poly_matrix.hpp"
#include "pgst/exact/sparse_poly.hpp"

namespace pgst::exact {

namespace detail {

// Univariate view over the parameter ring: element k multiplies t^k, no trailing zeros.
using UPoly = std::vector<SparsePoly>;

inline void trim(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline UPoly to_upoly(const SparsePoly& p) {
  UPoly u = p.t_coefficients();
  trim(u);
  return u;
}

inline std::size_t degree(const UPoly& a) { return a.empty() ? 0 : a.size() - 1; }

// lc(b)^(deg a - deg b + 1) * a  mod  b
inline UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  if (b.empty()) throw DomainError("pseudo-remainder by zero");
  trim(a);
  if (a.size() < b.size()) return a;
  const std::size_t db = degree(b);
  const SparsePoly& lb = b.back();
  long pending = static_cast<long>(degree(a) - db) + 1;
  while (!a.empty() && degree(a) >= db) {
    const std::size_t shift = degree(a) - db;
    SparsePoly la = a.back();
    for (auto& c : a) c *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] -= la * b[j];
    trim(a);
    --pending;
  }
  if (pending > 0 && !a.empty()) {
    SparsePoly scale = lb.pow(static_cast<std::uint32_t>(pending));
    for (auto& c : a) c *= scale;
  }
  return a;
}

// Last nonzero element of the subresultant remainder sequence; gcd up to a unit of Frac(R).
inline UPoly subresultant_gcd(UPoly a, UPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  SparsePoly g(1), h(1);
  while (true) {
    const std::size_t delta = degree(a) - degree(b);
    UPoly r = pseudo_remainder(a, b);
    if (r.empty()) return b;
    if (degree(r) == 0) return UPoly{SparsePoly(1)};
    a = std::move(b);
    SparsePoly divisor = g * h.pow(static_cast<std::uint32_t>(delta));
    for (auto& c : r) c = c.divide_exact(divisor);
    b = std::move(r);
    g = a.back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = g.pow(static_cast<std::uint32_t>(delta))
              .divide_exact(h.pow(static_cast<std::uint32_t>(delta - 1)));
    }
  }
}

// Divides through by the leading coefficient when that stays inside Q[symbols].
inline SparsePoly normalize_gcd(const UPoly& g) {
  if (g.empty()) return SparsePoly();
  const SparsePoly& lc = g.back();
  UPoly monic;
  bool exact = true;
  for (const auto& c : g) {
    auto q = c.try_divide(lc);
    if (!q) {
      exact = false;
      break;
    }
    monic.push_back(*q);
  }
  if (exact) return SparsePoly::from_t_coefficients(monic);
  // TODO: strip the content in Q[symbols] here so non-monic gcds come out primitive.
  Rational lead = lc.terms().begin()->second;
  UPoly scaled;
  for (const auto& c : g) scaled.push_back(c.scaled(Rational(1) / lead));
  return SparsePoly::from_t_coefficients(scaled);
}

}  // namespace detail

/// det(tI - M) by Berkowitz' division-free recurrence, so symbolic entries never need division.
inline SparsePoly charpoly(const PolyMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw StructuralError("characteristic polynomial of an empty matrix");
  // coeffs[i] multiplies t^(deg - i); start with the trailing 1x1 block.
  std::vector<SparsePoly> coeffs{SparsePoly(1), -m.at(n - 1, n - 1)};
  for (std::size_t k = n - 1; k-- > 0;) {
    const std::size_t block = n - k - 1;
    std::vector<SparsePoly> toeplitz;
    toeplitz.reserve(block + 2);
    toeplitz.push_back(SparsePoly(1));
    toeplitz.push_back(-m.at(k, k));
    PolyVector column(block);
    for (std::size_t i = 0; i < block; ++i) column[i] = m.at(k + 1 + i, k);
    for (std::size_t step = 0; step < block; ++step) {
      SparsePoly acc;
      for (std::size_t i = 0; i < block; ++i) {
        const auto& r = m.at(k, k + 1 + i);
        if (!r.is_zero() && !column[i].is_zero()) acc += r * column[i];
      }
      toeplitz.push_back(-acc);
      if (step + 1 < block) {
        PolyVector next(block);
        for (std::size_t i = 0; i < block; ++i)
          for (std::size_t j = 0; j < block; ++j) {
            const auto& a = m.at(k + 1 + i, k + 1 + j);
            if (!a.is_zero() && !column[j].is_zero()) next[i] += a * column[j];
          }
        column = std::move(next);
      }
    }
    std::vector<SparsePoly> next(block + 2);
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = 0; j <= std::min(i, block); ++j)
        if (!toeplitz[i - j].is_zero() && !coeffs[j].is_zero()) next[i] += toeplitz[i - j] * coeffs[j];
    coeffs = std::move(next);
  }
  SparsePoly out;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) out += coeffs[i] * SparsePoly::t(static_cast<std::uint32_t>(n - i));
  return out;
}

/// Monic rho with rho(M) z = 0 of least degree.
///
/// Krylov vectors z, Mz, M^2 z, ... are appended one at a time, each augmented by a unit
/// vector that records the combination, and reduced by fraction-free (Bareiss) steps against
/// the earlier pivot rows. Pivot columns are the lowest index with a nonzero entry. The first
/// row whose Krylov part vanishes carries the dependence in its augmented part.
inline SparsePoly krylov_min_poly(const PolyMatrix& m, const PolyVector& z) {
  const std::size_t n = m.dim();
  if (z.size() != n) throw StructuralError("vector length does not match matrix");
  if (std::all_of(z.begin(), z.end(), [](const SparsePoly& x) { return x.is_zero(); }))
    throw DomainError("Krylov minimal polynomial of the zero vector");

  struct Pivot {
    PolyVector row;
    std::size_t column;
  };
  const std::size_t width = 2 * n + 1;
  std::vector<Pivot> pivots;
  PolyVector krylov = z;
  for (std::size_t step = 0; step <= n; ++step) {
    PolyVector row(width);
    std::copy(krylov.begin(), krylov.end(), row.begin());
    row[n + step] = SparsePoly(1);
    SparsePoly previous(1);
    for (const auto& pivot : pivots) {
      const SparsePoly& p = pivot.row[pivot.column];
      const SparsePoly f = row[pivot.column];
      for (std::size_t j = 0; j < width; ++j) {
        SparsePoly updated = p * row[j];
        if (!f.is_zero() && !pivot.row[j].is_zero()) updated -= f * pivot.row[j];
        row[j] = updated.is_zero() ? SparsePoly() : updated.divide_exact(previous);
      }
      previous = p;
    }
    auto first = std::find_if(row.begin(), row.begin() + static_cast<long>(n),
                              [](const SparsePoly& x) { return !x.is_zero(); });
    if (first == row.begin() + static_cast<long>(n)) {
      const SparsePoly lead = row[n + step];
      SparsePoly rho;
      for (std::size_t j = 0; j <= step; ++j) {
        if (row[n + j].is_zero()) continue;
        rho += row[n + j].divide_exact(lead) * SparsePoly::t(static_cast<std::uint32_t>(j));
      }
      return rho;
    }
    const auto column = static_cast<std::size_t>(first - row.begin());
    pivots.push_back({std::move(row), column});
    if (step < n) krylov = m * krylov;
  }
  throw InternalError("Krylov sequence did not become dependent within n+1 vectors");
}

/// Sum of roots of a monic polynomial: minus the coefficient of t^(k-1).
inline SparsePoly poly_trace(const SparsePoly& p) {
  if (p.is_zero() || p.degree_t() == 0) throw DomainError("trace of a constant polynomial");
  if (!p.is_monic_t()) throw DomainError("trace of a non-monic polynomial " + p.to_string());
  return -p.coeff_t(p.degree_t() - 1);
}

/// P = S + sym * R with S, R free of sym.
inline std::pair<SparsePoly, SparsePoly> split_linear_param(const SparsePoly& p,
                                                             const std::string& sym) {
  if (p.degree(sym) >= 2)
    throw NotLinearInParam("polynomial has degree " + std::to_string(p.degree(sym)) + " in " +
                           sym);
  SparsePoly s = p.substitute(sym, Rational(0));
  SparsePoly r = (p - s).divide_exact(SparsePoly::symbol(sym));
  return {s, r};
}

/// Monic gcd with respect to t over the fraction field of Q[symbols].
///
/// Computed by the subresultant remainder sequence, so every intermediate stays polynomial.
/// When the gcd is not monic inside Q[symbols], the result is only scaled so that its
/// leading term has coefficient 1.
inline SparsePoly poly_gcd_t(const SparsePoly& a, const SparsePoly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
  if (a.is_zero()) return detail::normalize_gcd(detail::to_upoly(b));
  if (b.is_zero()) return detail::normalize_gcd(detail::to_upoly(a));
  if (a.degree_t() == 0 || b.degree_t() == 0) return SparsePoly(1);
  return detail::normalize_gcd(detail::subresultant_gcd(detail::to_upoly(a), detail::to_upoly(b)));
}

/// Irreducibility over Q(symbols) of a monic P linear in sym: P = S + sym*R is irreducible
/// exactly when S and R share no factor in t.
inline bool is_irreducible_linear_param(const SparsePoly& p, const std::string& sym) {
  if (!p.is_monic_t()) throw DomainError("irreducibility test needs a monic polynomial");
  auto [s, r] = split_linear_param(p, sym);
  if (r.is_zero()) throw DomainError("polynomial does not involve " + sym);
  return poly_gcd_t(s, r).degree_t() == 0;
}

}  // namespace pgst::exact
