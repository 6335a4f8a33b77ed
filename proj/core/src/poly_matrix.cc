#include "sosconvex/poly_matrix.h"

#include <stdexcept>
#include <string>

namespace sosconvex {
namespace {

// Exact quotient a / b; throws if b does not divide a.
Polynomial ExactDivide(Polynomial a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  const auto& [lead_m, lead_c] = *b.terms().rbegin();
  Polynomial q(a.num_vars());
  while (!a.is_zero()) {
    const auto& [m, c] = *a.terms().rbegin();
    if (!lead_m.divides(m)) {
      throw std::domain_error("polynomial division is not exact");
    }
    std::vector<int> exps(m.exponents());
    for (int i = 0; i < m.num_vars(); ++i) exps[i] -= lead_m[i];
    Polynomial t = Polynomial::Term(c / lead_c, Monomial(std::move(exps)));
    q += t;
    a -= t * b;
  }
  return q;
}

Polynomial Cofactor(const std::vector<Polynomial>& e, int n,
                    const std::vector<int>& rows, const std::vector<int>& cols) {
  const int k = static_cast<int>(rows.size());
  if (k == 1) return e[rows[0] * n + cols[0]];
  if (k == 2) {
    return e[rows[0] * n + cols[0]] * e[rows[1] * n + cols[1]] -
           e[rows[0] * n + cols[1]] * e[rows[1] * n + cols[0]];
  }
  Polynomial total(e[0].num_vars());
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (int j = 0; j < k; ++j) {
    const Polynomial& a = e[rows[0] * n + cols[j]];
    if (a.is_zero()) continue;
    std::vector<int> sub_cols;
    for (int c = 0; c < k; ++c) {
      if (c != j) sub_cols.push_back(cols[c]);
    }
    Polynomial minor = a * Cofactor(e, n, sub_rows, sub_cols);
    if (j % 2 == 0) {
      total += minor;
    } else {
      total -= minor;
    }
  }
  return total;
}

Polynomial Bareiss(std::vector<Polynomial> a, int n) {
  const int vars = a[0].num_vars();
  Polynomial prev = Polynomial::Constant(vars, Scalar(1));
  bool negate = false;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (!a[r * n + k].is_zero()) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return Polynomial(vars);
      for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap_row * n + c]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Polynomial num = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        a[i * n + j] = ExactDivide(std::move(num), prev);
      }
    }
    prev = a[k * n + k];
  }
  Polynomial det = a[(n - 1) * n + (n - 1)];
  return negate ? -det : det;
}

}  // namespace

PolyMatrix::PolyMatrix(int dim, std::vector<Polynomial> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim <= 0) throw std::invalid_argument("matrix dimension must be positive");
  if (static_cast<int>(entries_.size()) != dim * dim) {
    throw std::invalid_argument("matrix needs dim*dim entries");
  }
  num_vars_ = entries_[0].num_vars();
  for (const auto& e : entries_) {
    if (e.num_vars() != num_vars_) {
      throw std::invalid_argument("matrix entries over different variables");
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (!(entries_[i * dim + j] == entries_[j * dim + i])) {
        throw std::invalid_argument("polynomial matrix is not symmetric at (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
}

PolyMatrix PolyMatrix::Identity(int dim, int num_vars) {
  std::vector<Polynomial> e(dim * dim, Polynomial(num_vars));
  for (int i = 0; i < dim; ++i) {
    e[i * dim + i] = Polynomial::Constant(num_vars, Scalar(1));
  }
  return PolyMatrix(dim, std::move(e));
}

Polynomial PolyMatrix::QuadraticForm() const {
  const int total = num_vars_ + dim_;
  Polynomial out(total);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      const Polynomial& u = (*this)(i, j);
      if (u.is_zero()) continue;
      Polynomial yy = Polynomial::Variable(total, num_vars_ + i) *
                      Polynomial::Variable(total, num_vars_ + j);
      Polynomial term = Embed(u, total) * yy;
      if (i != j) term *= Scalar(2);
      out += term;
    }
  }
  return out;
}

PolyMatrix PolyMatrix::Principal(const std::vector<int>& indices) const {
  const int k = static_cast<int>(indices.size());
  std::vector<Polynomial> e;
  e.reserve(k * k);
  for (int i : indices) {
    for (int j : indices) {
      if (i < 0 || i >= dim_ || j < 0 || j >= dim_) {
        throw std::out_of_range("principal submatrix index out of range");
      }
      e.push_back((*this)(i, j));
    }
  }
  return PolyMatrix(k, std::move(e));
}

PolyMatrix Hessian(const Polynomial& p) {
  const int n = p.num_vars();
  if (n == 0) throw std::invalid_argument("hessian of a 0-variable polynomial");
  std::vector<Polynomial> grad = Gradient(p);
  std::vector<Polynomial> e(n * n, Polynomial(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      e[i * n + j] = Differentiate(grad[i], j);
      e[j * n + i] = e[i * n + j];
    }
  }
  return PolyMatrix(n, std::move(e));
}

Polynomial Determinant(const PolyMatrix& m) {
  const int n = m.dim();
  std::vector<Polynomial> e;
  e.reserve(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) e.push_back(m(i, j));
  }
  if (n <= 4) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    return Cofactor(e, n, idx, idx);
  }
  return Bareiss(std::move(e), n);
}

}  // namespace sosconvex
