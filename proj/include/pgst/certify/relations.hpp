#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/exact/rational.hpp"
#include "pgst/exact/sparse_poly.hpp"

namespace pgst::certify {

using Real = long double;

/// Integer relation over (lambdas, mus): sum l*lambda + sum m*mu ~ 0.
struct Relation {
  std::vector<long> l, m;
  Real residual = 0;

  long sum_l() const { return sum(l); }
  long sum_m() const { return sum(m); }
  friend bool operator<(const Relation& a, const Relation& b) {
    return std::tie(a.l, a.m) < std::tie(b.l, b.m);
  }
  friend bool operator==(const Relation& a, const Relation& b) { return a.l == b.l && a.m == b.m; }

 private:
  static long sum(const std::vector<long>& v) {
    long s = 0;
    for (auto x : v) s += x;
    return s;
  }
};

inline Real relation_value(const Relation& r, const std::vector<Real>& lambdas,
                           const std::vector<Real>& mus) {
  Real s = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) s += static_cast<Real>(r.l[i]) * lambdas[i];
  for (std::size_t j = 0; j < mus.size(); ++j) s += static_cast<Real>(r.m[j]) * mus[j];
  return s;
}

/// Real roots of a symbol-free polynomial in t: Durand-Kerner for all roots, then Newton
/// polishing of the real parts. Throws DomainError when a root is clearly non-real.
inline std::vector<Real> real_roots(const exact::SparsePoly& p) {
  if (!p.used_symbols().empty()) throw DomainError("numeric roots need a symbol-free polynomial");
  const std::size_t d = p.degree_t();
  if (p.is_zero()) throw DomainError("roots of the zero polynomial");
  if (d == 0) return {};
  std::vector<Real> a(d + 1);  // monic, a[k] multiplies t^k
  const exact::Rational lead = p.leading_coeff_t().constant_value();
  for (std::size_t k = 0; k <= d; ++k) {
    exact::Rational c = p.coeff_t(k).constant_value() / lead;
    a[k] = static_cast<Real>(c.get_d());
  }
  using C = std::complex<Real>;
  auto eval = [&](C z) {
    C acc = 0;
    for (std::size_t k = d + 1; k-- > 0;) acc = acc * z + a[k];
    return acc;
  };
  Real radius = 1;
  for (std::size_t k = 0; k < d; ++k) radius = std::max(radius, 1 + std::abs(a[k]));
  std::vector<C> z(d);
  for (std::size_t k = 0; k < d; ++k) z[k] = std::pow(C(0.4L, 0.9L), static_cast<int>(k)) * (radius / 2);
  for (int iter = 0; iter < 2000; ++iter) {
    Real change = 0;
    for (std::size_t i = 0; i < d; ++i) {
      C denom = 1;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (std::abs(denom) == 0) denom = C(1e-30L, 0);
      C step = eval(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-18L * radius) break;
  }
  std::vector<Real> roots;
  for (auto& r : z) {
    Real x = r.real();
    // Newton on the rational polynomial with long double evaluation.
    for (int k = 0; k < 60; ++k) {
      Real f = 0, df = 0;
      for (std::size_t j = d + 1; j-- > 0;) {
        df = df * x + f;
        f = f * x + a[j];
      }
      if (df == 0) break;
      Real step = f / df;
      x -= step;
      if (std::abs(step) <= 1e-19L * (1 + std::abs(x))) break;
    }
    if (std::abs(r.imag()) > 1e-6L * (1 + std::abs(x)))
      throw DomainError("polynomial has a non-real root; matrix is not symmetric?");
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace detail {

// Integer basis, long double Gram-Schmidt recomputed as needed; sizes here stay below ~50.
inline void lll_reduce(std::vector<std::vector<exact::Integer>>& b, Real delta = 0.99L) {
  const std::size_t n = b.size();
  if (n < 2) return;
  const std::size_t dim = b[0].size();
  std::vector<std::vector<Real>> bstar(n, std::vector<Real>(dim));
  std::vector<std::vector<Real>> mu(n, std::vector<Real>(n, 0));
  std::vector<Real> norm(n);
  auto as_real = [](const exact::Integer& z) { return static_cast<Real>(z.get_d()); };
  auto gram_schmidt_row = [&](std::size_t k) {
    for (std::size_t i = 0; i < dim; ++i) bstar[k][i] = as_real(b[k][i]);
    for (std::size_t j = 0; j < k; ++j) {
      Real dot = 0;
      for (std::size_t i = 0; i < dim; ++i) dot += as_real(b[k][i]) * bstar[j][i];
      mu[k][j] = norm[j] > 0 ? dot / norm[j] : 0;
      for (std::size_t i = 0; i < dim; ++i) bstar[k][i] -= mu[k][j] * bstar[j][i];
    }
    norm[k] = 0;
    for (std::size_t i = 0; i < dim; ++i) norm[k] += bstar[k][i] * bstar[k][i];
  };
  for (std::size_t k = 0; k < n; ++k) gram_schmidt_row(k);
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n && guard++ < 200000) {
    for (std::size_t j = k; j-- > 0;) {
      Real q = std::round(mu[k][j]);
      if (q == 0) continue;
      exact::Integer qi(static_cast<double>(q));
      for (std::size_t i = 0; i < dim; ++i) b[k][i] -= qi * b[j][i];
      gram_schmidt_row(k);
    }
    if (norm[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      std::swap(b[k], b[k - 1]);
      gram_schmidt_row(k - 1);
      gram_schmidt_row(k);
      for (std::size_t r = k + 1; r < n; ++r) gram_schmidt_row(r);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
}

inline bool admissible(const Relation& r, long bound) {
  if (r.sum_l() + r.sum_m() != 0) return false;
  if ((r.sum_m() % 2 + 2) % 2 != 1) return false;
  for (auto x : r.l)
    if (std::abs(x) > bound) return false;
  for (auto x : r.m)
    if (std::abs(x) > bound) return false;
  return true;
}

// Sign normalisation: the first nonzero coefficient is positive.
inline Relation canonical(Relation r) {
  long first = 0;
  for (auto x : r.l)
    if (x != 0 && first == 0) first = x;
  for (auto x : r.m)
    if (x != 0 && first == 0) first = x;
  if (first < 0) {
    for (auto& x : r.l) x = -x;
    for (auto& x : r.m) x = -x;
  }
  return r;
}

}  // namespace detail

inline constexpr double kExhaustiveCutoff = 1e7;

/// Integer vectors (l, m) with entries in [-bound, bound], sum l + sum m = 0, sum m odd and
/// |sum l*lambda + sum m*mu| < precision. Candidates come from LLL on the scaled relation
/// lattice, plus an exhaustive scan when (2 bound + 1)^(r+s) <= 1e7. Results are unique up to
/// sign and sorted. A hit is numerical evidence only.
inline std::vector<Relation> integer_relation_search(const std::vector<Real>& lambdas,
                                                     const std::vector<Real>& mus, long bound,
                                                     Real precision) {
  if (bound < 1) throw DomainError("relation bound must be at least 1");
  if (!(precision > 0)) throw DomainError("relation precision must be positive");
  const std::size_t r = lambdas.size(), s = mus.size(), d = r + s;
  if (d == 0) return {};
  std::vector<Real> x(lambdas);
  x.insert(x.end(), mus.begin(), mus.end());
  std::set<Relation> found;
  auto consider = [&](const std::vector<long>& coeffs) {
    Relation rel;
    rel.l.assign(coeffs.begin(), coeffs.begin() + static_cast<long>(r));
    rel.m.assign(coeffs.begin() + static_cast<long>(r), coeffs.end());
    if (!detail::admissible(rel, bound)) return;
    rel.residual = relation_value(rel, lambdas, mus);
    if (std::abs(rel.residual) >= precision) return;
    found.insert(detail::canonical(rel));
  };

  // Lattice part: rows e_i | W * 1 | N * x_i.
  {
    Real scale = std::clamp(0.1L / precision, 1e4L, 1e13L);
    Real xmax = 1;
    for (auto v : x) xmax = std::max(xmax, std::abs(v));
    scale = std::min(scale, 1e15L / (xmax * static_cast<Real>(d)));
    const exact::Integer weight(static_cast<double>(1e6L * static_cast<Real>(bound)));
    std::vector<std::vector<exact::Integer>> basis(d, std::vector<exact::Integer>(d + 2));
    for (std::size_t i = 0; i < d; ++i) {
      basis[i][i] = 1;
      basis[i][d] = weight;
      basis[i][d + 1] = exact::Integer(static_cast<double>(std::llround(scale * x[i])));
    }
    detail::lll_reduce(basis);
    std::vector<std::vector<long>> rows;
    for (const auto& row : basis) {
      if (row[d] != 0) continue;
      std::vector<long> coeffs(d);
      bool fits = true;
      for (std::size_t i = 0; i < d; ++i) {
        if (!row[i].fits_slong_p() || std::abs(row[i].get_si()) > 64 * bound) fits = false;
        else coeffs[i] = row[i].get_si();
      }
      if (fits) rows.push_back(coeffs);
    }
    for (const auto& a : rows) consider(a);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j)
        for (int sign : {1, -1}) {
          std::vector<long> c(d);
          for (std::size_t k = 0; k < d; ++k) c[k] = rows[i][k] + sign * rows[j][k];
          consider(c);
        }
  }

  // Exhaustive part.
  if (std::pow(static_cast<double>(2 * bound + 1), static_cast<double>(d)) <= kExhaustiveCutoff) {
    std::vector<long> c(d, -bound);
    while (true) {
      consider(c);
      std::size_t k = 0;
      while (k < d && c[k] == bound) c[k++] = -bound;
      if (k == d) break;
      ++c[k];
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace pgst::certify
