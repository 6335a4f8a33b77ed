#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sosconvex/polynomial.h"

namespace sosconvex {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);

  static RationalMatrix Identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& operator()(int i, int j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(int i, int j) const { return data_[i * cols_ + j]; }
  bool is_symmetric() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Scalar> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix Transpose(const RationalMatrix& a);

/// Ordered list of distinct monomials over one variable set.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(int num_vars, std::vector<Monomial> monomials);

  int num_vars() const { return num_vars_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const Monomial& operator[](int i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  /// -1 when absent.
  int IndexOf(const Monomial& m) const;

  friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) {
    return a.num_vars_ == b.num_vars_ && a.monomials_ == b.monomials_;
  }

 private:
  int num_vars_ = 0;
  std::vector<Monomial> monomials_;
  std::map<Monomial, int, GradedLexLess> index_;
};

enum class BasisStructure {
  kPlain,        // all monomials of degree <= half_degree
  kHomogeneous,  // monomials of degree exactly half_degree
  kBipartite,    // x^α y_i with deg x^α == half_degree - 1
  kBipartiteNonHomogeneous,  // x^α y_i with deg x^α <= half_degree - 1
};

/// For the bipartite structures the first `num_x` variables form the x-block
/// and the rest the y-block; `half_degree` counts the y factor.
MonomialBasis StandardBasis(int num_vars, int half_degree,
                            BasisStructure structure, int num_x = 0);

enum class LdltStatus { kPositiveDefinite, kPositiveSemidefinite, kIndefinite };

std::string ToString(LdltStatus s);

/// PᵀQP = LDLᵀ, where P permutes index perm[k] into position k.
struct LdltResult {
  std::vector<int> permutation;
  RationalMatrix lower;
  std::vector<Scalar> pivots;
  LdltStatus status = LdltStatus::kIndefinite;
  /// False when elimination stopped on an all-zero diagonal with a nonzero
  /// off-diagonal remainder; the factors then cover only the leading block.
  bool complete = true;
};

/// Exact symmetric-pivoted LDLᵀ; pivots on the largest-magnitude diagonal.
LdltResult RationalLdlt(const RationalMatrix& q);

/// multiplier · p = scale · zᵀQz with Q ⪰ 0.
struct GramCertificate {
  MonomialBasis basis;
  RationalMatrix gram;
  Polynomial multiplier;
  Scalar scale = 1;

  GramCertificate() = default;
  GramCertificate(MonomialBasis b, RationalMatrix q);
  GramCertificate(MonomialBasis b, RationalMatrix q, Polynomial m, Scalar s);
};

/// A linear functional c on the monomials of `ordering`; its moment matrix
/// over `moment_basis` must be PSD and its pairing with the target negative.
struct SeparationCertificate {
  MonomialBasis ordering;
  std::vector<Scalar> dual;
  MonomialBasis moment_basis;
};

struct VerificationReport {
  enum class Failure { kNone, kIdentity, kNotPsd, kPairingNonNegative };

  bool valid = false;
  Failure failure = Failure::kNone;
  /// First monomial (graded-lex) where the identity check disagrees.
  std::optional<Monomial> mismatch;
  Scalar mismatch_lhs;
  Scalar mismatch_rhs;
  LdltStatus psd_status = LdltStatus::kIndefinite;
  std::vector<Scalar> pivots;
  /// Exact ⟨c, t⟩ for separation checks.
  Scalar pairing;
  std::string message;
};

/// scale · zᵀQz expanded exactly.
Polynomial GramPolynomial(const MonomialBasis& basis, const RationalMatrix& q,
                          const Scalar& scale = 1);

VerificationReport VerifyGram(const Polynomial& p, const GramCertificate& cert);

RationalMatrix MomentMatrix(const SeparationCertificate& cert);

VerificationReport VerifySeparation(const Polynomial& t,
                                    const SeparationCertificate& cert);

/// Every product of two basis monomials, deduplicated, in graded-lex order.
MonomialBasis ProductSupport(const MonomialBasis& basis);

}  // namespace sosconvex
