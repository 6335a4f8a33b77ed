#include <gtest/gtest.h>

#include "sosconvex/constructions.h"
#include "sosconvex/poly_io.h"
#include "test_util.h"

namespace sosconvex {
namespace {

TEST(CatalogTest, EveryNameLoadsAndMatchesGolden) {
  const std::vector<std::string> names = CatalogNames();
  EXPECT_EQ(names.size(), 9u);
  for (const std::string& name : names) {
    CatalogEntry e = Catalog(name);
    EXPECT_EQ(e.name, name);
    EXPECT_NE(e.polynomial.has_value(), e.matrix.has_value()) << name;
    EXPECT_FALSE(e.claims.empty()) << name;
    const std::string text =
        e.polynomial ? Serialize(*e.polynomial) : Serialize(*e.matrix);
    const std::string file =
        "catalog/" + name + (e.polynomial ? ".poly" : ".polymatrix");
    EXPECT_EQ(text, testing::ReadData(file)) << name;
  }
}

TEST(CatalogTest, DegreesAndVariables) {
  auto shape = [](const std::string& name) {
    Polynomial p = Catalog(name).polynomial.value();
    return std::make_pair(p.num_vars(), p.degree());
  };
  EXPECT_EQ(shape("motzkin"), std::make_pair(3, 6));
  EXPECT_EQ(shape("robinson"), std::make_pair(4, 4));
  EXPECT_EQ(shape("f36"), std::make_pair(3, 6));
  EXPECT_EQ(shape("f26"), std::make_pair(2, 6));
  EXPECT_EQ(shape("h44"), std::make_pair(4, 4));
  EXPECT_EQ(shape("h34"), std::make_pair(3, 4));
  EXPECT_TRUE(Catalog("h44").polynomial->is_homogeneous());
  EXPECT_FALSE(Catalog("h34").polynomial->is_homogeneous());
}

TEST(CatalogTest, LowDimensionalEntriesAreDehomogenizations) {
  Polynomial h34 = Catalog("h34").polynomial.value();
  EXPECT_EQ(h34, Dehomogenize(Catalog("h44").polynomial.value(), 3, 1));
}

TEST(CatalogTest, UnknownNameThrows) {
  EXPECT_THROW(Catalog("nonexistent"), std::out_of_range);
}

TEST(MotzkinFamilyTest, ExpandsAsExpected) {
  Polynomial m = MotzkinFamily(6, 0);
  EXPECT_EQ(m, Catalog("motzkin").polynomial.value());
  Polynomial m8 = MotzkinFamily(8, Scalar(1, 2));
  EXPECT_EQ(m8.degree(), 8);
  EXPECT_TRUE(m8.is_homogeneous());
  EXPECT_EQ(m8.coefficient(Monomial({6, 2, 0})), Scalar(1) + Scalar(2));
  EXPECT_EQ(m8.coefficient(Monomial({0, 0, 8})), Scalar(1, 2));
}

TEST(MotzkinFamilyTest, HessianAtFirstAxisIsDiagonal) {
  Polynomial m = MotzkinFamily(10, Scalar(1, 8));
  PolyMatrix h = Hessian(m);
  std::vector<Scalar> e1 = {1, 0, 0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        EXPECT_EQ(Evaluate(h(i, j), e1), 0);
      }
    }
  }
  // x1⁸x2² contributes 2 and α(x1²+x2²+x3²)⁵ contributes 10α.
  EXPECT_EQ(Evaluate(h(1, 1), e1), 2 + Scalar(1, 8) * 10);
}

TEST(MotzkinFamilyTest, InvalidArgumentsThrow) {
  EXPECT_THROW(MotzkinFamily(4, 1), std::invalid_argument);
  EXPECT_THROW(MotzkinFamily(7, 1), std::invalid_argument);
  EXPECT_THROW(MotzkinFamily(8, -1), std::invalid_argument);
}

TEST(FindAlphaTest, StopsAtFirstCertifiedNonSosMember) {
  std::optional<AlphaSearch> a = FindAlpha(8);
  ASSERT_TRUE(a.has_value());
  EXPECT_GT(a->alpha, 0);
  Scalar back = a->alpha;
  for (int k = 0; k < a->halvings; ++k) back *= 2;
  EXPECT_EQ(back, 1);
  ASSERT_TRUE(a->status.certified_not_sos());
  EXPECT_TRUE(
      VerifySeparation(a->status.target, *a->status.separation).valid);
  EXPECT_GT(a->sphere_min, 0);
}

TEST(BuildThm58Test, SecondDerivativeRecoversSeed) {
  Polynomial m = MotzkinFamily(6, Scalar(1, 4));
  ConstructionRecipe r = BuildThm58(m, DefaultPadding(6), 3);
  EXPECT_EQ(r.f.degree(), 8);
  EXPECT_TRUE(r.f.is_homogeneous());
  EXPECT_EQ(Differentiate(Differentiate(r.f, 0), 0), m);
  // On x1 = 0 only the padding survives, and it has no x1 dependence.
  std::vector<Polynomial> plane = {Polynomial(3), Polynomial::Variable(3, 1),
                                   Polynomial::Variable(3, 2)};
  Polynomial on_plane = Substitute(r.f, plane);
  EXPECT_EQ(on_plane, Scalar(3) * r.g);
  EXPECT_TRUE(Differentiate(r.g, 0).is_zero());
}

TEST(BuildThm58Test, AcceptsBinaryPadding) {
  Polynomial m = MotzkinFamily(6, 1);
  Polynomial g2 = ParseInfix("(x1^2 + x2^2)^4");
  ConstructionRecipe r = BuildThm58(m, g2, 1);
  EXPECT_EQ(r.g, DefaultPadding(6));
}

TEST(BuildThm58Test, InvalidInputsThrow) {
  Polynomial m = MotzkinFamily(6, 1);
  EXPECT_THROW(BuildThm58(m, DefaultPadding(6), 0), std::invalid_argument);
  EXPECT_THROW(BuildThm58(m, DefaultPadding(8), 1), std::invalid_argument);
  EXPECT_THROW(BuildThm58(m, ParseInfix("x1^8", 3), 1), std::invalid_argument);
  EXPECT_THROW(BuildThm58(ParseInfix("x1^2", 3), DefaultPadding(2), 1),
               std::invalid_argument);
}

TEST(DefaultPaddingTest, DegreeAndVariables) {
  Polynomial g = DefaultPadding(8);
  EXPECT_EQ(g.degree(), 10);
  EXPECT_EQ(g.num_vars(), 3);
  EXPECT_THROW(DefaultPadding(5), std::invalid_argument);
}

GammaOptions FastGamma() {
  GammaOptions o;
  o.samples = 20000;
  o.polish_points = 8;
  o.polish_steps = 50;
  return o;
}

TEST(FindGammaTest, PaddingIsPositiveWhereSeedIsNegative) {
  Polynomial m = MotzkinFamily(6, Scalar(1, 16));
  GammaEstimate e = FindGamma(m, DefaultPadding(6), FastGamma());
  EXPECT_LT(e.beta1, 0);
  EXPECT_GT(e.beta2, 0);
  EXPECT_GT(e.ratio, 0);
  EXPECT_GE(e.gamma, FromDouble(2 * e.ratio));
}

TEST(FindGammaTest, RatioScalesWithSeed) {
  Polynomial m = MotzkinFamily(6, Scalar(1, 16));
  GammaEstimate e1 = FindGamma(m, DefaultPadding(6), FastGamma());
  GammaEstimate e2 = FindGamma(Scalar(2) * m, DefaultPadding(6), FastGamma());
  EXPECT_NEAR(e2.ratio / e1.ratio, 2.0, 1e-9);
}

TEST(FindGammaTest, ZeroSeedNeedsNoWeight) {
  GammaEstimate e = FindGamma(Polynomial(3), DefaultPadding(6), FastGamma());
  EXPECT_EQ(e.gamma, 1);
  EXPECT_EQ(e.ratio, 0);
}

TEST(FindGammaTest, DeterministicForFixedSeed) {
  Polynomial m = MotzkinFamily(6, Scalar(1, 16));
  GammaEstimate a = FindGamma(m, DefaultPadding(6), FastGamma());
  GammaEstimate b = FindGamma(m, DefaultPadding(6), FastGamma());
  EXPECT_EQ(a.gamma, b.gamma);
  EXPECT_EQ(a.ratio, b.ratio);
}

TEST(ExtendVariablesTest, AddsPowerOfNewVariable) {
  Polynomial h = Catalog("h44").polynomial.value();
  Polynomial e = ExtendVariables(h, 4);
  EXPECT_EQ(e.num_vars(), 5);
  EXPECT_EQ(e.coefficient(Monomial({0, 0, 0, 0, 4})), 1);
  EXPECT_EQ(e - Pow(Polynomial::Variable(5, 4), 4), Embed(h, 5, 0));
  // The Hessian is block diagonal with the new variable on its own.
  PolyMatrix hess = Hessian(e);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(hess(i, 4).is_zero());
  EXPECT_THROW(ExtendVariables(h, 6), std::invalid_argument);
  EXPECT_THROW(ExtendVariables(h, 3), std::invalid_argument);
}

TEST(DehomogenizeConstructionTest, SetsThirdVariableToOne) {
  ConstructionRecipe r =
      BuildThm58(MotzkinFamily(6, Scalar(1, 4)), DefaultPadding(6), 8);
  Polynomial d = DehomogenizeConstruction(r);
  EXPECT_EQ(d.num_vars(), 2);
  std::vector<Scalar> xy = {Scalar(1, 3), Scalar(-2, 5)};
  std::vector<Scalar> xyz = {Scalar(1, 3), Scalar(-2, 5), 1};
  EXPECT_EQ(Evaluate(d, xy), Evaluate(r.f, xyz));
}

TEST(CoveragePlanTest, Routes) {
  EXPECT_TRUE(CoveragePlan(3, 4, true).equal_case);
  EXPECT_TRUE(CoveragePlan(2, 4, false).equal_case);
  CoverageRoute a = CoveragePlan(6, 4, true);
  EXPECT_EQ(a.base, "h44");
  EXPECT_EQ(a.extensions, 2);
  CoverageRoute b = CoveragePlan(3, 6, true);
  EXPECT_EQ(b.base, "f36");
  EXPECT_EQ(b.extensions, 0);
  CoverageRoute c = CoveragePlan(5, 10, true);
  EXPECT_EQ(c.base, "thm58");
  EXPECT_EQ(c.seed_degree, 8);
  EXPECT_EQ(c.extensions, 2);
  CoverageRoute d = CoveragePlan(3, 4, false);
  EXPECT_EQ(d.base, "h34");
  CoverageRoute e = CoveragePlan(2, 6, false);
  EXPECT_EQ(e.base, "f26");
  CoverageRoute f = CoveragePlan(4, 8, false);
  EXPECT_EQ(f.base, "thm58-dehomogenized");
  EXPECT_EQ(f.extensions, 2);
}

}  // namespace
}  // namespace sosconvex
