#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pgst/errors.hpp"
#include "pgst/exact/sparse_poly.hpp"

namespace pgst::exact {

using PolyVector = std::vector<SparsePoly>;

/// Dense symmetric matrix over the parameter ring Q[symbols]. Entries never involve t.
class PolyMatrix {
 public:
  PolyMatrix() = default;

  explicit PolyMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    for (std::size_t i = 0; i < dim; ++i) labels_.push_back(std::to_string(i));
  }

  PolyMatrix(std::size_t dim, std::vector<SparsePoly> entries, std::vector<std::string> labels = {})
      : dim_(dim), entries_(std::move(entries)), labels_(std::move(labels)) {
    if (entries_.size() != dim_ * dim_)
      throw StructuralError("matrix needs " + std::to_string(dim_ * dim_) + " entries, got " +
                            std::to_string(entries_.size()));
    if (labels_.empty())
      for (std::size_t i = 0; i < dim_; ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != dim_) throw StructuralError("label count does not match dimension");
    validate();
  }

  // Row-major nested input; checks squareness and symmetry.
  static PolyMatrix from_rows(const std::vector<std::vector<SparsePoly>>& rows) {
    std::vector<SparsePoly> flat;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) throw StructuralError("matrix is not square");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return PolyMatrix(rows.size(), std::move(flat));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  const SparsePoly& at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  // Writes both (i,j) and (j,i).
  void set_symmetric(std::size_t i, std::size_t j, const SparsePoly& value) {
    if (!value.free_of_t()) throw StructuralError("matrix entries must be free of t");
    entries_[i * dim_ + j] = value;
    entries_[j * dim_ + i] = value;
  }

  PolyVector operator*(const PolyVector& x) const {
    if (x.size() != dim_) throw StructuralError("vector length does not match matrix");
    PolyVector y(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        const auto& a = at(i, j);
        if (!a.is_zero() && !x[j].is_zero()) y[i] += a * x[j];
      }
    return y;
  }

  SparsePoly trace() const {
    SparsePoly acc;
    for (std::size_t i = 0; i < dim_; ++i) acc += at(i, i);
    return acc;
  }

  bool contains(const std::string& sym) const {
    for (const auto& e : entries_)
      if (e.contains(sym)) return true;
    return false;
  }

  PolyMatrix substitute(const std::string& sym, const Rational& value) const {
    std::vector<SparsePoly> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.substitute(sym, value));
    return PolyMatrix(dim_, std::move(out), labels_);
  }

  // Adds value to the diagonal entries listed in where.
  PolyMatrix plus_diagonal(const std::vector<std::size_t>& where, const SparsePoly& value) const {
    PolyMatrix out = *this;
    for (auto i : where) {
      if (i >= dim_) throw StructuralError("diagonal index out of range");
      out.entries_[i * dim_ + i] += value;
    }
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!at(i, j).free_of_t()) throw StructuralError("matrix entries must be free of t");
        if (j > i && at(i, j) != at(j, i))
          throw StructuralError("matrix is not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
      }
  }

  std::size_t dim_ = 0;
  std::vector<SparsePoly> entries_;
  std::vector<std::string> labels_;
};

inline SparsePoly dot(const PolyVector& a, const PolyVector& b) {
  if (a.size() != b.size()) throw StructuralError("dot product of vectors of different length");
  SparsePoly acc;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  return acc;
}

inline PolyVector unit_vector(std::size_t n, std::size_t i) {
  if (i >= n) throw StructuralError("index out of range");
  PolyVector v(n);
  v[i] = SparsePoly(1);
  return v;
}

}  // namespace pgst::exact
