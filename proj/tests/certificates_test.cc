#include <gtest/gtest.h>

#include "sosconvex/certificate_io.h"
#include "sosconvex/certificates.h"
#include "test_util.h"

namespace sosconvex {
namespace {

RationalMatrix Matrix(const std::vector<std::vector<int>>& rows) {
  RationalMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// PᵀQP = LDLᵀ with P from the permutation.
void ExpectReconstructs(const RationalMatrix& q, const LdltResult& r) {
  const int n = q.rows();
  RationalMatrix d(n, n);
  for (std::size_t k = 0; k < r.pivots.size(); ++k) d(k, k) = r.pivots[k];
  RationalMatrix ldl = r.lower * d * Transpose(r.lower);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      EXPECT_EQ(ldl(i, j), q(r.permutation[i], r.permutation[j]));
    }
  }
}

TEST(LdltTest, PositiveDefinite2x2) {
  RationalMatrix q = Matrix({{4, 2}, {2, 2}});
  LdltResult r = RationalLdlt(q);
  EXPECT_EQ(r.status, LdltStatus::kPositiveDefinite);
  ASSERT_EQ(r.pivots.size(), 2u);
  EXPECT_EQ(r.pivots[0], 4);
  EXPECT_EQ(r.pivots[1], 1);
  ExpectReconstructs(q, r);
}

TEST(LdltTest, Identity) {
  LdltResult r = RationalLdlt(RationalMatrix::Identity(3));
  EXPECT_EQ(r.status, LdltStatus::kPositiveDefinite);
  EXPECT_EQ(r.lower, RationalMatrix::Identity(3));
  for (const Scalar& p : r.pivots) EXPECT_EQ(p, 1);
}

TEST(LdltTest, Semidefinite) {
  RationalMatrix q = Matrix({{1, 1}, {1, 1}});
  LdltResult r = RationalLdlt(q);
  EXPECT_EQ(r.status, LdltStatus::kPositiveSemidefinite);
  EXPECT_EQ(r.pivots[0], 1);
  EXPECT_EQ(r.pivots[1], 0);
  ExpectReconstructs(q, r);
}

TEST(LdltTest, ZeroDiagonalWithOffDiagonalIsIndefinite) {
  LdltResult r = RationalLdlt(Matrix({{0, 1}, {1, 0}}));
  EXPECT_EQ(r.status, LdltStatus::kIndefinite);
  EXPECT_FALSE(r.complete);
}

TEST(LdltTest, NegativePivotIsIndefinite) {
  LdltResult r = RationalLdlt(Matrix({{1, 2}, {2, 1}}));
  EXPECT_EQ(r.status, LdltStatus::kIndefinite);
}

TEST(LdltTest, RejectsAsymmetric) {
  EXPECT_THROW(RationalLdlt(Matrix({{1, 2}, {3, 1}})), std::invalid_argument);
}

TEST(StandardBasisTest, Plain) {
  MonomialBasis b = StandardBasis(2, 1, BasisStructure::kPlain);
  ASSERT_EQ(b.size(), 3);
  EXPECT_EQ(b[0], Monomial({0, 0}));
  EXPECT_EQ(b[1], Monomial({1, 0}));
  EXPECT_EQ(b[2], Monomial({0, 1}));
  MonomialBasis one = StandardBasis(1, 0, BasisStructure::kPlain);
  ASSERT_EQ(one.size(), 1);
  EXPECT_EQ(one[0], Monomial(std::vector<int>{0}));
}

TEST(StandardBasisTest, HomogeneousCount) {
  // C(3 + 3 - 1, 3) = 10 cubic monomials in three variables.
  EXPECT_EQ(StandardBasis(3, 3, BasisStructure::kHomogeneous).size(), 10);
}

TEST(StandardBasisTest, BipartiteMatchesAppendixOrdering) {
  CertificateFile file =
      ReadCertificate(testing::ReadData("certificates/appendix_gram.cert"));
  const MonomialBasis& z = file.gram->basis;
  MonomialBasis full = StandardBasis(6, 4, BasisStructure::kBipartite, 3);
  EXPECT_EQ(full.size(), 30);
  // The appendix basis is the full one without x3³y_i, in the same order.
  std::vector<Monomial> kept;
  for (const Monomial& m : full.monomials()) {
    if (m[2] != 3) kept.push_back(m);
  }
  EXPECT_EQ(kept, z.monomials());
  EXPECT_EQ(z[0], Monomial({0, 1, 2, 0, 0, 1}));
}

TEST(MonomialBasisTest, RejectsDuplicates) {
  EXPECT_THROW(MonomialBasis(1, {Monomial(std::vector<int>{1}), Monomial(std::vector<int>{1})}),
               std::invalid_argument);
}

TEST(VerifyGramTest, TrivialIdentity) {
  Polynomial p = ParseInfix("x1^2 + x2^2", 2);
  MonomialBasis z(2, {Monomial({1, 0}), Monomial({0, 1})});
  VerificationReport r = VerifyGram(p, GramCertificate(z, RationalMatrix::Identity(2)));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.psd_status, LdltStatus::kPositiveDefinite);
}

TEST(VerifyGramTest, AppendixCertificateAndPerturbation) {
  CertificateFile file =
      ReadCertificate(testing::ReadData("certificates/appendix_gram.cert"));
  VerificationReport r = VerifyGram(file.polynomial, *file.gram);
  EXPECT_TRUE(r.valid) << r.message;
  EXPECT_EQ(r.psd_status, LdltStatus::kPositiveDefinite);
  EXPECT_EQ(file.gram->scale, Scalar(1, 84));

  GramCertificate bad = *file.gram;
  bad.gram(0, 0) += 1;
  VerificationReport rb = VerifyGram(file.polynomial, bad);
  EXPECT_FALSE(rb.valid);
  EXPECT_EQ(rb.failure, VerificationReport::Failure::kIdentity);
  ASSERT_TRUE(rb.mismatch.has_value());
  // z_1² = x2²x3⁴y3² is where the perturbation shows.
  EXPECT_EQ(*rb.mismatch, Monomial({0, 2, 4, 0, 0, 2}));
}

TEST(VerifyGramTest, IndefiniteGramRejected) {
  // x1² - x2² is not sos; a matching Gram matrix must be indefinite.
  Polynomial p = ParseInfix("x1^2 - x2^2", 2);
  MonomialBasis z(2, {Monomial({1, 0}), Monomial({0, 1})});
  RationalMatrix q(2, 2);
  q(0, 0) = 1;
  q(1, 1) = -1;
  VerificationReport r = VerifyGram(p, GramCertificate(z, q));
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.failure, VerificationReport::Failure::kNotPsd);
}

TEST(SeparationTest, AppendixMomentMatrix) {
  CertificateFile file =
      ReadCertificate(testing::ReadData("certificates/appendix_separation.cert"));
  RationalMatrix m = MomentMatrix(*file.separation);
  EXPECT_EQ(m.rows(), 12);
  EXPECT_EQ(m(0, 0), 19338);
  EXPECT_EQ(m(1, 1), 17155);
  VerificationReport r = VerifySeparation(file.polynomial, *file.separation);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.pairing, Scalar(-364547, 16));
  EXPECT_EQ(r.psd_status, LdltStatus::kPositiveDefinite);
}

TEST(SeparationTest, SquareHasNonNegativePairing) {
  CertificateFile file =
      ReadCertificate(testing::ReadData("certificates/appendix_separation.cert"));
  // (x1y1)² in (x1, x2, y1, y2).
  Polynomial t = Polynomial::Term(Scalar(1), Monomial({2, 0, 2, 0}));
  VerificationReport r = VerifySeparation(t, *file.separation);
  EXPECT_FALSE(r.valid);
  EXPECT_GE(r.pairing, 0);
  EXPECT_EQ(r.failure, VerificationReport::Failure::kPairingNonNegative);
}

TEST(SeparationTest, ZeroFunctionalRejected) {
  CertificateFile file =
      ReadCertificate(testing::ReadData("certificates/appendix_separation.cert"));
  SeparationCertificate zero = *file.separation;
  std::fill(zero.dual.begin(), zero.dual.end(), Scalar(0));
  VerificationReport r = VerifySeparation(file.polynomial, zero);
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.pairing, 0);
}

TEST(SeparationTest, PointEvaluationGivesRankOneMoments) {
  // c(m) = m(1, 2) is a point evaluation: M = v vᵀ with v = z(1, 2).
  MonomialBasis z(2, {Monomial({0, 0}), Monomial({1, 0}), Monomial({0, 1})});
  MonomialBasis ordering = ProductSupport(z);
  SeparationCertificate c;
  c.ordering = ordering;
  c.moment_basis = z;
  std::vector<Scalar> pt = {1, 2};
  for (const Monomial& m : ordering.monomials()) {
    c.dual.push_back(Evaluate(Polynomial::Term(Scalar(1), m), pt));
  }
  RationalMatrix mm = MomentMatrix(c);
  const std::vector<Scalar> v = {1, 1, 2};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(mm(i, j), v[i] * v[j]);
  }
  LdltResult r = RationalLdlt(mm);
  EXPECT_EQ(r.status, LdltStatus::kPositiveSemidefinite);
  int nonzero = 0;
  for (const Scalar& p : r.pivots) nonzero += p != 0;
  EXPECT_EQ(nonzero, 1);
}

TEST(ProductSupportTest, DeduplicatesInOrder) {
  MonomialBasis z(1, {Monomial(std::vector<int>{0}), Monomial(std::vector<int>{1})});
  MonomialBasis s = ProductSupport(z);
  ASSERT_EQ(s.size(), 3);
  EXPECT_EQ(s[0], Monomial(std::vector<int>{0}));
  EXPECT_EQ(s[2], Monomial(std::vector<int>{2}));
}

}  // namespace
}  // namespace sosconvex
