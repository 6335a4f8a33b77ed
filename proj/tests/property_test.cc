#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "sosconvex/constructions.h"
#include "sosconvex/convexity_forms.h"
#include "sosconvex/poly_io.h"
#include "sosconvex/sos_analysis.h"
#include "test_util.h"

namespace sosconvex {
namespace {

using testing::RandomPoint;
using testing::RandomPolynomial;

constexpr int kTrials = 120;

struct Shape {
  int n;
  int d;
};

Shape RandomShape(std::mt19937_64& rng, int max_n, int max_d) {
  std::uniform_int_distribution<int> n(1, max_n), d(0, max_d);
  return {n(rng), d(rng)};
}

TEST(PolynomialProperty, RingAxioms) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 4);
    Polynomial a = RandomPolynomial(rng, s.n, s.d, 4);
    Polynomial b = RandomPolynomial(rng, s.n, s.d, 4);
    Polynomial c = RandomPolynomial(rng, s.n, s.d, 4);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ(-(-a), a);
    EXPECT_EQ(Pow(a, 2), a * a);
  }
}

TEST(PolynomialProperty, EvaluationIsARingHomomorphism) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 5);
    Polynomial a = RandomPolynomial(rng, s.n, s.d, 5);
    Polynomial b = RandomPolynomial(rng, s.n, s.d, 5);
    std::vector<Scalar> x = RandomPoint(rng, s.n);
    EXPECT_EQ(Evaluate(a + b, x), Evaluate(a, x) + Evaluate(b, x));
    EXPECT_EQ(Evaluate(a * b, x), Evaluate(a, x) * Evaluate(b, x));
  }
}

TEST(PolynomialProperty, DifferentiationRules) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 5);
    Polynomial a = RandomPolynomial(rng, s.n, s.d, 5);
    Polynomial b = RandomPolynomial(rng, s.n, s.d, 5);
    for (int i = 0; i < s.n; ++i) {
      EXPECT_EQ(Differentiate(a * b, i),
                Differentiate(a, i) * b + a * Differentiate(b, i));
      for (int j = 0; j < s.n; ++j) {
        EXPECT_EQ(Differentiate(Differentiate(a, i), j),
                  Differentiate(Differentiate(a, j), i));
      }
    }
  }
}

TEST(PolynomialProperty, EulerIdentityForForms) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 8);
    Polynomial p = RandomPolynomial(rng, s.n, s.d, 5, true);
    Polynomial euler(s.n);
    for (int i = 0; i < s.n; ++i) {
      euler += Polynomial::Variable(s.n, i) * Differentiate(p, i);
    }
    EXPECT_EQ(euler, Scalar(s.d) * p);
  }
}

TEST(PolynomialProperty, IntegrateTwiceInvertsSecondDerivative) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 6);
    Polynomial m = RandomPolynomial(rng, s.n, s.d, 5);
    Polynomial f = IntegrateFirstVariableTwice(m);
    EXPECT_EQ(Differentiate(Differentiate(f, 0), 0), m);
    std::vector<Scalar> x = RandomPoint(rng, s.n);
    x[0] = 0;
    EXPECT_EQ(Evaluate(f, x), 0);
    EXPECT_EQ(Evaluate(Differentiate(f, 0), x), 0);
  }
}

TEST(PolynomialProperty, HomogenizeThenDehomogenize) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 6);
    Polynomial p = RandomPolynomial(rng, s.n, s.d, 5);
    Polynomial h = Homogenize(p, p.degree() + t % 2);
    EXPECT_TRUE(h.is_homogeneous());
    EXPECT_EQ(Dehomogenize(h, s.n), p);
  }
}

TEST(PolynomialProperty, SerializationRoundTrips) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 4, 6);
    Polynomial p = RandomPolynomial(rng, s.n, s.d, 6);
    EXPECT_EQ(DeserializePolynomial(Serialize(p)), p);
    EXPECT_EQ(ParseInfix(ToInfix(p), s.n), p) << ToInfix(p);
    EXPECT_EQ(ParsePolynomial(Serialize(p)), p);
  }
}

TEST(ConvexityFormsProperty, ResidualIdentitiesVanish) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 8);
    Polynomial p = RandomPolynomial(rng, s.n, s.d, 4);
    EXPECT_TRUE(MidpointDecompositionResidual(p).poly.is_zero());
    EXPECT_TRUE(TaylorIntegralResidual(p).poly.is_zero());
    EXPECT_TRUE(DyadicRelationResidual(p, 1 + t % 3).poly.is_zero());
  }
}

TEST(ConvexityFormsProperty, FormRestrictionVanishesForForms) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 8);
    Polynomial p = RandomPolynomial(rng, s.n, std::max(s.d, 1), 4, true);
    EXPECT_TRUE(FormRestrictionIdentity(p).poly.is_zero());
  }
}

TEST(ConvexityFormsProperty, WitnessesVanishOnDiagonalAndShiftAgrees) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < kTrials; ++t) {
    const Shape s = RandomShape(rng, 3, 6);
    Polynomial p = RandomPolynomial(rng, s.n, s.d, 4);
    std::vector<Scalar> x = RandomPoint(rng, s.n);
    std::vector<Scalar> u = RandomPoint(rng, s.n);
    std::vector<Scalar> xx = x, xy = x, xu = x;
    xx.insert(xx.end(), x.begin(), x.end());
    for (int i = 0; i < s.n; ++i) xy.push_back(x[i] + u[i]);
    xu.insert(xu.end(), u.begin(), u.end());
    for (const BiPolynomial& g :
         {BuildGLambda(p, Scalar(1, 3)), BuildGGrad(p)}) {
      EXPECT_EQ(Evaluate(g.poly, xx), 0);
      EXPECT_EQ(Evaluate(ShiftToDifference(g), xu), Evaluate(g.poly, xy));
    }
    // The Hessian form is quadratic in y.
    BiPolynomial h = BuildGHess(p);
    std::vector<Scalar> x2u = x;
    for (int i = 0; i < s.n; ++i) x2u.push_back(2 * u[i]);
    EXPECT_EQ(Evaluate(h.poly, x2u), 4 * Evaluate(h.poly, xu));
  }
}

RationalMatrix RandomSymmetric(std::mt19937_64& rng, int n) {
  RationalMatrix q(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) q(i, j) = q(j, i) = testing::RandomRational(rng);
  }
  return q;
}

Eigen::MatrixXd ToDouble(const RationalMatrix& q) {
  Eigen::MatrixXd m(q.rows(), q.cols());
  for (int i = 0; i < q.rows(); ++i) {
    for (int j = 0; j < q.cols(); ++j) m(i, j) = q(i, j).get_d();
  }
  return m;
}

TEST(LdltProperty, ReconstructsPermutedMatrix) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 7);
  for (int t = 0; t < kTrials; ++t) {
    const int n = size(rng);
    RationalMatrix q = RandomSymmetric(rng, n);
    if (t % 2 == 0) q = Transpose(q) * q;  // PSD half of the trials
    LdltResult r = RationalLdlt(q);
    if (!r.complete) {
      EXPECT_EQ(r.status, LdltStatus::kIndefinite);
      continue;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Scalar v = 0;
        for (int k = 0; k < n; ++k) {
          v += r.lower(i, k) * r.pivots[k] * r.lower(j, k);
        }
        EXPECT_EQ(v, q(r.permutation[i], r.permutation[j]));
      }
    }
    if (t % 2 == 0) {
      EXPECT_NE(r.status, LdltStatus::kIndefinite);
    }
  }
}

TEST(LdltProperty, StatusAgreesWithEigenvalues) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> size(1, 6);
  for (int t = 0; t < kTrials; ++t) {
    RationalMatrix q = RandomSymmetric(rng, size(rng));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ToDouble(q));
    const double lo = es.eigenvalues().minCoeff();
    LdltStatus s = RationalLdlt(q).status;
    if (lo < -1e-9) {
      EXPECT_EQ(s, LdltStatus::kIndefinite);
    }
    if (lo > 1e-9) {
      EXPECT_EQ(s, LdltStatus::kPositiveDefinite);
    }
  }
}

TEST(CertificateProperty, GramOfPsdMatrixVerifiesAndTamperingFails) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 3;
    MonomialBasis z = StandardBasis(n, 2, BasisStructure::kPlain);
    RationalMatrix b = RandomSymmetric(rng, z.size());
    RationalMatrix q = Transpose(b) * b;
    Polynomial p = GramPolynomial(z, q);
    EXPECT_TRUE(VerifyGram(p, GramCertificate(z, q)).valid);
    RationalMatrix bad = q;
    bad(0, z.size() - 1) += 1;
    bad(z.size() - 1, 0) += 1;
    if (z.size() == 1) bad(0, 0) -= 1;  // keep the change visible
    EXPECT_FALSE(VerifyGram(p, GramCertificate(z, bad)).valid);
  }
}

TEST(DualityProperty, RandomSumsOfSquaresAreNeverCertifiedNotSos) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 3;
    Polynomial p(n);
    for (int k = 0; k < 1 + t % 3; ++k) {
      p += Pow(RandomPolynomial(rng, n, 2, 3), 2);
    }
    SosStatus s = IsSos(p);
    EXPECT_NE(s.kind, SosStatus::Kind::kCertifiedNotSos) << ToInfix(p);
    if (s.gram) {
      EXPECT_TRUE(VerifyGram(s.target, *s.gram).valid);
    }
  }
}

TEST(DualityProperty, NegativeSomewhereIsNeverCertifiedSos) {
  std::mt19937_64 rng(15);
  int negative = 0;
  for (int t = 0; t < 40 && negative < 20; ++t) {
    const int n = 1 + t % 3;
    Polynomial p = RandomPolynomial(rng, n, 4, 5);
    std::vector<Scalar> x = RandomPoint(rng, n);
    if (Evaluate(p, x) >= 0) continue;
    ++negative;
    SosStatus s = IsSos(p);
    EXPECT_NE(s.kind, SosStatus::Kind::kCertifiedSos) << ToInfix(p);
    if (s.separation) {
      EXPECT_TRUE(VerifySeparation(s.target, *s.separation).valid);
    }
  }
  EXPECT_GT(negative, 5);
}

TEST(ConstructionsProperty, CoveragePlanMatchesClassification) {
  for (int n = 1; n <= 8; ++n) {
    for (int d = 2; d <= 12; d += 2) {
      for (bool hom : {true, false}) {
        Classification c = Classify(n, d, hom);
        CoverageRoute r = CoveragePlan(n, d, hom);
        EXPECT_EQ(r.equal_case, c.convex_equals_sos_convex)
            << n << " " << d << " " << hom;
        if (r.equal_case) continue;
        EXPECT_GE(r.extensions, 0);
        // The base example's variable count plus extensions must give n.
        int base_vars = 0;
        if (r.base == "thm58") {
          base_vars = 3;
          EXPECT_EQ(r.seed_degree, d - 2);
        } else if (r.base == "thm58-dehomogenized") {
          base_vars = 2;
        } else {
          base_vars = Catalog(r.base).polynomial->num_vars();
          EXPECT_EQ(Catalog(r.base).polynomial->degree(), d);
        }
        EXPECT_EQ(base_vars + r.extensions, n);
      }
    }
  }
}

TEST(ConstructionsProperty, ExtensionPreservesConvexityWitness) {
  std::mt19937_64 rng(16);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 3;
    const int d = 2 * (1 + t % 3);
    Polynomial p = RandomPolynomial(rng, n, d, 4, true);
    Polynomial e = ExtendVariables(p, d);
    PolyMatrix h = Hessian(e);
    PolyMatrix hp = Hessian(p);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) EXPECT_EQ(h(i, j), Embed(hp(i, j), n + 1, 0));
    }
  }
}

}  // namespace
}  // namespace sosconvex
