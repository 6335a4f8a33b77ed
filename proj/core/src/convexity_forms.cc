#include "sosconvex/convexity_forms.h"

#include <stdexcept>
#include <vector>

#include "sosconvex/poly_matrix.h"

namespace sosconvex {
namespace {

Polynomial X(int n, int i) { return Polynomial::Variable(2 * n, i); }
Polynomial Y(int n, int i) { return Polynomial::Variable(2 * n, n + i); }

// g(x, y) with x and y replaced by the given 2n-variable assignments.
Polynomial Compose(const Polynomial& g, const std::vector<Polynomial>& xs,
                   const std::vector<Polynomial>& ys) {
  std::vector<Polynomial> all = xs;
  all.insert(all.end(), ys.begin(), ys.end());
  return Substitute(g, all);
}

// Integrates the last variable over [0, 1] and drops it.
Polynomial IntegrateLastOverUnit(const Polynomial& p) {
  const int n = p.num_vars() - 1;
  Polynomial out(n);
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> exps(m.exponents().begin(), m.exponents().end() - 1);
    out += Polynomial::Term(c / (m[n] + 1), Monomial(std::move(exps)));
  }
  return out;
}

}  // namespace

WitnessKind WitnessKind::Midpoint(const Scalar& lambda) {
  if (lambda <= 0 || lambda >= 1) {
    throw std::invalid_argument("midpoint weight must lie strictly in (0,1)");
  }
  return {kMidpoint, lambda};
}

std::string WitnessKind::name() const {
  switch (type) {
    case kMidpoint:
      return "midpoint(" + ToDisplayString(lambda) + ")";
    case kFirstOrder:
      return "first-order";
    case kSecondOrder:
      return "second-order";
  }
  return "unknown";
}

BiPolynomial::BiPolynomial(Polynomial p, int n) : poly(std::move(p)), split(n) {
  if (poly.num_vars() != 2 * n) {
    throw std::invalid_argument("bipolynomial must have 2n variables");
  }
}

BiPolynomial BuildGLambda(const Polynomial& p, const Scalar& lambda) {
  if (lambda <= 0 || lambda >= 1) {
    throw std::invalid_argument("lambda must lie strictly in (0,1)");
  }
  const int n = p.num_vars();
  std::vector<Polynomial> mix;
  for (int i = 0; i < n; ++i) {
    mix.push_back((Scalar(1) - lambda) * X(n, i) + lambda * Y(n, i));
  }
  Polynomial g = (Scalar(1) - lambda) * Embed(p, 2 * n, 0) +
                 lambda * Embed(p, 2 * n, n) - Substitute(p, mix);
  return BiPolynomial(std::move(g), n);
}

BiPolynomial BuildGGrad(const Polynomial& p) {
  const int n = p.num_vars();
  Polynomial g = Embed(p, 2 * n, n) - Embed(p, 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    Polynomial di = Embed(Differentiate(p, i), 2 * n, 0);
    g -= di * (Y(n, i) - X(n, i));
  }
  return BiPolynomial(std::move(g), n);
}

BiPolynomial BuildGHess(const Polynomial& p) {
  return BiPolynomial(Hessian(p).QuadraticForm(), p.num_vars());
}

BiPolynomial DyadicRelationResidual(const Polynomial& p, int k) {
  if (k < 1) throw std::invalid_argument("dyadic level k must be >= 1");
  const int n = p.num_vars();
  Scalar step = 1;
  mpz_class den = 1;
  den <<= k;
  step /= den;
  Scalar finer = step / 2;
  BiPolynomial lhs = BuildGLambda(p, finer);
  BiPolynomial coarse = BuildGLambda(p, step);
  BiPolynomial half = BuildGLambda(p, Scalar(1, 2));
  std::vector<Polynomial> xs, ys;
  for (int i = 0; i < n; ++i) {
    xs.push_back(X(n, i));
    ys.push_back((Scalar(1) - step) * X(n, i) + step * Y(n, i));
  }
  Polynomial r = lhs.poly - Scalar(1, 2) * coarse.poly -
                 Compose(half.poly, xs, ys);
  return BiPolynomial(std::move(r), n);
}

BiPolynomial MidpointDecompositionResidual(const Polynomial& p) {
  const int n = p.num_vars();
  BiPolynomial half = BuildGLambda(p, Scalar(1, 2));
  BiPolynomial grad = BuildGGrad(p);
  std::vector<Polynomial> mid, xs, ys;
  for (int i = 0; i < n; ++i) {
    mid.push_back(Scalar(1, 2) * (X(n, i) + Y(n, i)));
    xs.push_back(X(n, i));
    ys.push_back(Y(n, i));
  }
  Polynomial r = half.poly - Scalar(1, 2) * Compose(grad.poly, mid, xs) -
                 Scalar(1, 2) * Compose(grad.poly, mid, ys);
  return BiPolynomial(std::move(r), n);
}

BiPolynomial TaylorIntegralResidual(const Polynomial& p) {
  const int n = p.num_vars();
  const int total = 2 * n + 1;  // x, y, then t
  Polynomial t = Polynomial::Variable(total, 2 * n);
  std::vector<Polynomial> path, diff;
  for (int i = 0; i < n; ++i) {
    Polynomial xi = Polynomial::Variable(total, i);
    Polynomial yi = Polynomial::Variable(total, n + i);
    diff.push_back(yi - xi);
    path.push_back(xi + t * (yi - xi));
  }
  PolyMatrix h = Hessian(p);
  Polynomial quad(total);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (h(i, j).is_zero()) continue;
      quad += Substitute(h(i, j), path) * diff[i] * diff[j];
    }
  }
  Polynomial weight = Polynomial::Constant(total, Scalar(1)) - t;
  Polynomial integral = IntegrateLastOverUnit(weight * quad);
  return BiPolynomial(BuildGGrad(p).poly - integral, n);
}

BiPolynomial FormRestrictionIdentity(const Polynomial& p) {
  if (!p.is_homogeneous()) {
    throw std::invalid_argument("restriction identity needs a form");
  }
  const int n = p.num_vars();
  const int d = std::max(p.degree(), 0);
  BiPolynomial half = BuildGLambda(p, Scalar(1, 2));
  std::vector<Polynomial> xs, zeros;
  for (int i = 0; i < n; ++i) {
    xs.push_back(X(n, i));
    zeros.push_back(Polynomial(2 * n));
  }
  mpz_class two_d = 1;
  two_d <<= d;
  Scalar coeff = Scalar(1, 2) - Scalar(1) / Scalar(two_d);
  Polynomial r = Compose(half.poly, xs, zeros) - coeff * Embed(p, 2 * n, 0);
  return BiPolynomial(std::move(r), n);
}

Polynomial ShiftToDifference(const BiPolynomial& g) {
  const int n = g.split;
  std::vector<Polynomial> xs, ys;
  for (int i = 0; i < n; ++i) {
    xs.push_back(X(n, i));
    ys.push_back(X(n, i) + Y(n, i));
  }
  return Compose(g.poly, xs, ys);
}

}  // namespace sosconvex
