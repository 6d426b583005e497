#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/exact/poly_matrix.hpp"

namespace pgst::walk {

using Matrix = std::vector<std::vector<double>>;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kClusterTolerance = 1e-8;

/// Substitutes numeric values for every symbol.
inline Matrix numeric_matrix(const exact::PolyMatrix& m, const std::map<std::string, double>& values = {}) {
  const std::size_t n = m.dim();
  Matrix a(n, std::vector<double>(n, 0.0));
  auto lookup = [&](const std::string& s) {
    auto it = values.find(s);
    if (it == values.end())
      throw DomainError("symbol " + s + " has no numeric value; pass --potential-value");
    return it->second;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j).evaluate(0.0, lookup);
  return a;
}

struct NumericSpectrum {
  std::vector<double> eigenvalues;                 // ascending
  Matrix eigenvectors;                             // eigenvectors[k] belongs to eigenvalues[k]
  std::vector<std::vector<std::size_t>> clusters;  // indices into eigenvalues
  std::vector<double> cluster_values;              // mean eigenvalue of each cluster
  std::vector<Matrix> projectors;                  // one per cluster

  std::size_t dim() const { return eigenvalues.size(); }
};

namespace detail {

// Cyclic Jacobi; a is overwritten with an almost diagonal matrix, v accumulates rotations.
inline void jacobi(Matrix& a, Matrix& v) {
  const std::size_t n = a.size();
  v.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  double scale = 0;
  for (const auto& row : a)
    for (double x : row) scale = std::max(scale, std::abs(x));
  if (scale == 0) return;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (std::sqrt(off) <= 1e-17 * scale) return;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
}

}  // namespace detail

/// Eigen-decomposition of a symmetric matrix, with eigenvalues grouped when they differ by
/// less than kClusterTolerance times the spectral diameter and one projector per group.
inline NumericSpectrum sym_eig(const Matrix& m, double cluster_tolerance = kClusterTolerance) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw StructuralError("matrix is not square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m[i][j] - m[j][i]) > kSymmetryTolerance)
        throw DomainError("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  Matrix a = m, v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a[i][j] = a[j][i] = (m[i][j] + m[j][i]) / 2;
  detail::jacobi(a, v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x][x] < a[y][y]; });
  NumericSpectrum s;
  for (auto k : order) {
    s.eigenvalues.push_back(a[k][k]);
    std::vector<double> vec(n);
    for (std::size_t i = 0; i < n; ++i) vec[i] = v[i][k];
    s.eigenvectors.push_back(std::move(vec));
  }
  if (n == 0) return s;

  const double diameter = s.eigenvalues.back() - s.eigenvalues.front();
  const double tol = cluster_tolerance * std::max(diameter, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || s.eigenvalues[k] - s.eigenvalues[k - 1] >= tol) s.clusters.emplace_back();
    s.clusters.back().push_back(k);
  }
  for (const auto& cluster : s.clusters) {
    double mean = 0;
    Matrix e(n, std::vector<double>(n, 0.0));
    for (auto k : cluster) {
      mean += s.eigenvalues[k];
      const auto& x = s.eigenvectors[k];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i][j] += x[i] * x[j];
    }
    s.cluster_values.push_back(mean / static_cast<double>(cluster.size()));
    s.projectors.push_back(std::move(e));
  }
  return s;
}

/// Largest |M x - lambda x| over the unit eigenvectors.
inline double max_residual(const Matrix& m, const NumericSpectrum& s) {
  double worst = 0;
  const std::size_t n = s.dim();
  for (std::size_t k = 0; k < n; ++k) {
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = -s.eigenvalues[k] * s.eigenvectors[k][i];
      for (std::size_t j = 0; j < n; ++j) acc += m[i][j] * s.eigenvectors[k][j];
      r += acc * acc;
    }
    worst = std::max(worst, std::sqrt(r));
  }
  return worst;
}

}  // namespace pgst::walk
