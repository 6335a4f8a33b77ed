#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sosconvex/scalar.h"

namespace sosconvex {

/// Exponent vector x^α over a fixed number of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int num_vars);
  explicit Monomial(std::vector<int> exponents);

  static Monomial Variable(int num_vars, int index);

  int num_vars() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exponents_[i]; }
  const std::vector<int>& exponents() const { return exponents_; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exponents_ == b.exponents_;
  }

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree,
/// larger x1 exponent first, then x2, and so on.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the rationals. Zero coefficients are
/// never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar, GradedLexLess>;

  explicit Polynomial(int num_vars = 0);
  Polynomial(int num_vars, TermMap terms);

  static Polynomial Constant(int num_vars, const Scalar& value);
  static Polynomial Variable(int num_vars, int index);
  static Polynomial Term(const Scalar& coefficient, const Monomial& monomial);

  int num_vars() const { return num_vars_; }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_homogeneous() const;
  std::size_t num_terms() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  Scalar coefficient(const Monomial& m) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Scalar& c);

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void AddTerm(const Monomial& m, const Scalar& c);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  int num_vars_ = 0;
  TermMap terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Polynomial a, const Scalar& c);
Polynomial operator*(const Scalar& c, Polynomial a);
Polynomial Pow(const Polynomial& p, int k);

/// Exact value at a rational point.
Scalar Evaluate(const Polynomial& p, std::span<const Scalar> point);

Polynomial Differentiate(const Polynomial& p, int var_index);
std::vector<Polynomial> Gradient(const Polynomial& p);

/// Composition p(q_1, ..., q_n); every q_i shares one variable count, which
/// becomes the variable count of the result.
Polynomial Substitute(const Polynomial& p,
                      std::span<const Polynomial> assignments);

/// y^d p(x/y), with the new variable appended last.
Polynomial Homogenize(const Polynomial& p, int target_degree);

/// Fixes variable `var_index` to `value` and drops it.
Polynomial Dehomogenize(const Polynomial& p, int var_index,
                        const Scalar& value = Scalar(1));

/// ∫_0^{x1} ∫_0^{s} m(t, x2, ..., xn) dt ds.
Polynomial IntegrateFirstVariableTwice(const Polynomial& m);

/// Reindexes into `new_num_vars` variables, old variable i landing at
/// position offset + i.
Polynomial Embed(const Polynomial& p, int new_num_vars, int offset = 0);

/// Largest absolute coefficient, 0 for the zero polynomial.
Scalar MaxAbsCoefficient(const Polynomial& p);

}  // namespace sosconvex
