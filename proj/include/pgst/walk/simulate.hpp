#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>
#include <vector>

#include "pgst/walk/spectrum.hpp"

namespace pgst::walk {

using Complex = std::complex<double>;

/// U(t)_{u,v} = sum over clusters of e^{i t lambda} (E_lambda)_{u,v}.
inline Complex transfer_amplitude(const NumericSpectrum& s, std::size_t u, std::size_t v, double t) {
  if (u >= s.dim() || v >= s.dim()) throw StructuralError("vertex out of range");
  Complex acc = 0;
  for (std::size_t c = 0; c < s.projectors.size(); ++c)
    acc += std::polar(s.projectors[c][u][v], t * s.cluster_values[c]);
  return acc;
}

/// Row u of U(t).
inline std::vector<Complex> amplitude_row(const NumericSpectrum& s, std::size_t u, double t) {
  std::vector<Complex> row(s.dim());
  for (std::size_t w = 0; w < s.dim(); ++w) row[w] = transfer_amplitude(s, u, w, t);
  return row;
}

/// Sum of |(E_lambda)_{u,v}|; an upper bound for every |U(t)_{u,v}|, equal to 1 exactly when
/// u and v are strongly cospectral.
inline double pgst_ceiling(const NumericSpectrum& s, std::size_t u, std::size_t v) {
  if (u >= s.dim() || v >= s.dim()) throw StructuralError("vertex out of range");
  double acc = 0;
  for (const auto& e : s.projectors) acc += std::abs(e[u][v]);
  return acc;
}

/// Per cluster, E e_u and E e_v must be parallel up to sign, or both negligible.
inline bool numeric_strong_cospectral(const NumericSpectrum& s, std::size_t u, std::size_t v,
                                      double tol = 1e-6) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  if (u >= s.dim() || v >= s.dim()) throw StructuralError("vertex out of range");
  const std::size_t n = s.dim();
  for (const auto& e : s.projectors) {
    double nu = 0, nv = 0, minus = 0, plus = 0;
    for (std::size_t i = 0; i < n; ++i) {
      nu += e[i][u] * e[i][u];
      nv += e[i][v] * e[i][v];
      minus += (e[i][u] - e[i][v]) * (e[i][u] - e[i][v]);
      plus += (e[i][u] + e[i][v]) * (e[i][u] + e[i][v]);
    }
    if (std::sqrt(nu) < tol && std::sqrt(nv) < tol) continue;
    if (std::sqrt(minus) * std::sqrt(plus) > tol * nu) return false;
  }
  return true;
}

struct FidelityScan {
  double t_max = 0;
  std::size_t steps = 0;
  std::vector<double> times;
  std::vector<double> fidelity;
  double best_time = 0;
  double best_fidelity = 0;
};

inline constexpr std::size_t kRefinedCandidates = 16;

namespace detail {

// Golden-section maximisation of f on [a, b].
template <class F>
std::pair<double, double> golden_max(F f, double a, double b) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int k = 0; k < 200 && b - a > 1e-13 * std::max(1.0, std::abs(b)); ++k) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

}  // namespace detail

/// Uniform grid t_k = k t_max / (steps - 1), then golden-section refinement on the cells around
/// the strongest grid peaks. Reports a running maximum over [0, t_max], not a supremum.
inline FidelityScan fidelity_scan(const NumericSpectrum& s, std::size_t u, std::size_t v, double t_max,
                                  std::size_t steps) {
  if (steps < 2) throw DomainError("fidelity scan needs at least 2 steps");
  if (!(t_max > 0)) throw DomainError("t_max must be positive");
  if (u >= s.dim() || v >= s.dim()) throw StructuralError("vertex out of range");
  FidelityScan scan;
  scan.t_max = t_max;
  scan.steps = steps;
  scan.times.resize(steps);
  scan.fidelity.resize(steps);
  const double dt = t_max / static_cast<double>(steps - 1);
  auto f = [&](double t) { return std::abs(transfer_amplitude(s, u, v, t)); };
  for (std::size_t k = 0; k < steps; ++k) {
    scan.times[k] = k + 1 == steps ? t_max : static_cast<double>(k) * dt;
    scan.fidelity[k] = f(scan.times[k]);
  }

  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < steps; ++k) {
    const bool left = k == 0 || scan.fidelity[k] >= scan.fidelity[k - 1];
    const bool right = k + 1 == steps || scan.fidelity[k] >= scan.fidelity[k + 1];
    if (left && right) peaks.push_back(k);
  }
  const std::size_t keep = std::min(kRefinedCandidates, peaks.size());
  std::partial_sort(peaks.begin(), peaks.begin() + static_cast<long>(keep), peaks.end(),
                    [&](auto a, auto b) { return scan.fidelity[a] > scan.fidelity[b]; });
  std::vector<std::pair<double, double>> candidates;  // (t, fidelity)
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    const auto k = peaks[i];
    candidates.emplace_back(scan.times[k], scan.fidelity[k]);
    if (i >= keep) continue;
    const double a = k == 0 ? 0.0 : scan.times[k - 1];
    const double b = k + 1 == steps ? t_max : scan.times[k + 1];
    candidates.push_back(detail::golden_max(f, a, b));
  }
  for (const auto& c : candidates) scan.best_fidelity = std::max(scan.best_fidelity, c.second);
  // best_time is the earliest candidate within 1e-12 of the maximum.
  scan.best_time = t_max;
  for (const auto& [t, value] : candidates)
    if (value >= scan.best_fidelity - 1e-12) scan.best_time = std::min(scan.best_time, t);
  return scan;
}

/// Two columns, t and fidelity, with a header row.
inline void write_csv(std::ostream& os, const FidelityScan& scan) {
  const auto old = os.precision(17);
  os << "t,fidelity\n";
  for (std::size_t k = 0; k < scan.times.size(); ++k) os << scan.times[k] << ',' << scan.fidelity[k] << '\n';
  os.precision(old);
}

}  // namespace pgst::walk
