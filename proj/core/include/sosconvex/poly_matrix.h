#pragma once

#include <vector>

#include "sosconvex/polynomial.h"

namespace sosconvex {

/// Symmetric square matrix with polynomial entries, all over one variable set.
class PolyMatrix {
 public:
  /// Row-major entries; throws unless square and exactly symmetric.
  PolyMatrix(int dim, std::vector<Polynomial> entries);

  static PolyMatrix Identity(int dim, int num_vars);

  int dim() const { return dim_; }
  int num_vars() const { return num_vars_; }
  const Polynomial& operator()(int i, int j) const {
    return entries_[i * dim_ + j];
  }

  /// yᵀU(x)y as a polynomial in (x, y): x keeps indices 0..n-1 and y_i is
  /// variable n + i.
  Polynomial QuadraticForm() const;

  /// Submatrix on the given sorted index set.
  PolyMatrix Principal(const std::vector<int>& indices) const;

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  int dim_;
  int num_vars_;
  std::vector<Polynomial> entries_;
};

PolyMatrix Hessian(const Polynomial& p);

/// Exact determinant: cofactor expansion up to dimension 4, fraction-free
/// Bareiss elimination beyond.
Polynomial Determinant(const PolyMatrix& m);

}  // namespace sosconvex
