#pragma once

#include <string>

#include "sosconvex/polynomial.h"

namespace sosconvex {

/// Which convexity characterization a witness polynomial encodes.
struct WitnessKind {
  enum Type { kMidpoint, kFirstOrder, kSecondOrder };

  Type type = kSecondOrder;
  /// Only meaningful for kMidpoint; must lie strictly inside (0, 1).
  Scalar lambda = Scalar(1, 2);

  static WitnessKind Midpoint(const Scalar& lambda = Scalar(1, 2));
  static WitnessKind FirstOrder() { return {kFirstOrder, Scalar(1, 2)}; }
  static WitnessKind SecondOrder() { return {kSecondOrder, Scalar(1, 2)}; }

  std::string name() const;
};

/// A polynomial in 2n variables: x_1..x_n are indices 0..n-1 and y_1..y_n
/// are indices n..2n-1.
struct BiPolynomial {
  Polynomial poly;
  int split = 0;

  BiPolynomial(Polynomial p, int n);
};

/// (1-λ)p(x) + λp(y) - p((1-λ)x + λy).
BiPolynomial BuildGLambda(const Polynomial& p, const Scalar& lambda);

/// p(y) - p(x) - ∇p(x)ᵀ(y - x).
BiPolynomial BuildGGrad(const Polynomial& p);

/// yᵀH(x)y.
BiPolynomial BuildGHess(const Polynomial& p);

/// g_{2^-(k+1)}(x,y) - ½g_{2^-k}(x,y) - g_{1/2}(x, (1-2^-k)x + 2^-k y).
BiPolynomial DyadicRelationResidual(const Polynomial& p, int k);

/// g_{1/2}(x,y) - ½g_∇(m, x) - ½g_∇(m, y) with m = (x+y)/2.
BiPolynomial MidpointDecompositionResidual(const Polynomial& p);

/// g_∇(x,y) - ∫₀¹ (1-t)(y-x)ᵀH(x + t(y-x))(y-x) dt, integrated exactly.
BiPolynomial TaylorIntegralResidual(const Polynomial& p);

/// g_{1/2}(x,0) - (1/2 - 2^-d)p(x) for a form p of degree d.
BiPolynomial FormRestrictionIdentity(const Polynomial& p);

/// Substitutes y = x + u so the witness no longer vanishes identically on
/// the diagonal x = y. Returns a polynomial in (x, u).
Polynomial ShiftToDifference(const BiPolynomial& g);

}  // namespace sosconvex
