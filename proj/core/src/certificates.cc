#include "sosconvex/certificates.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sosconvex {
namespace {

void AppendMonomialsOfDegree(int num_vars, int degree,
                             std::vector<Monomial>& out) {
  std::vector<int> exps(num_vars, 0);
  std::function<void(int, int)> rec = [&](int var, int remaining) {
    if (var == num_vars - 1) {
      exps[var] = remaining;
      out.emplace_back(exps);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exps[var] = e;
      rec(var + 1, remaining - e);
    }
    exps[var] = 0;
  };
  if (num_vars == 0) {
    if (degree == 0) out.emplace_back(std::vector<int>{});
    return;
  }
  rec(0, degree);
}

// Ascending degree; within a degree, descending graded-lex rank.
void SortBipartite(std::vector<Monomial>& ms) {
  GradedLexLess less;
  std::sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return less(b, a);
  });
}

}  // namespace

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("negative matrix dimension");
  }
}

RationalMatrix RationalMatrix::Identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product: inner dimension mismatch");
  }
  RationalMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return c;
}

RationalMatrix Transpose(const RationalMatrix& a) {
  RationalMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

MonomialBasis::MonomialBasis(int num_vars, std::vector<Monomial> monomials)
    : num_vars_(num_vars), monomials_(std::move(monomials)) {
  for (int i = 0; i < size(); ++i) {
    if (monomials_[i].num_vars() != num_vars) {
      throw std::invalid_argument("basis monomial has wrong variable count");
    }
    if (!index_.emplace(monomials_[i], i).second) {
      throw std::invalid_argument("duplicate monomial in basis");
    }
  }
}

int MonomialBasis::IndexOf(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

MonomialBasis StandardBasis(int num_vars, int half_degree,
                            BasisStructure structure, int num_x) {
  if (half_degree < 0) throw std::invalid_argument("negative half degree");
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  std::vector<Monomial> out;
  switch (structure) {
    case BasisStructure::kPlain:
      for (int k = 0; k <= half_degree; ++k) {
        AppendMonomialsOfDegree(num_vars, k, out);
      }
      break;
    case BasisStructure::kHomogeneous:
      AppendMonomialsOfDegree(num_vars, half_degree, out);
      break;
    case BasisStructure::kBipartite:
    case BasisStructure::kBipartiteNonHomogeneous: {
      if (num_x < 0 || num_x > num_vars) {
        throw std::invalid_argument("bipartite split out of range");
      }
      if (half_degree < 1) break;
      const int num_y = num_vars - num_x;
      const int lo = structure == BasisStructure::kBipartite ? half_degree - 1 : 0;
      std::vector<Monomial> xs;
      for (int k = lo; k <= half_degree - 1; ++k) {
        AppendMonomialsOfDegree(num_x, k, xs);
      }
      for (const Monomial& xm : xs) {
        for (int i = 0; i < num_y; ++i) {
          std::vector<int> e = xm.exponents();
          e.resize(num_vars, 0);
          e[num_x + i] = 1;
          out.emplace_back(std::move(e));
        }
      }
      SortBipartite(out);
      return MonomialBasis(num_vars, std::move(out));
    }
  }
  std::sort(out.begin(), out.end(), GradedLexLess());
  return MonomialBasis(num_vars, std::move(out));
}

std::string ToString(LdltStatus s) {
  switch (s) {
    case LdltStatus::kPositiveDefinite:
      return "positive-definite";
    case LdltStatus::kPositiveSemidefinite:
      return "positive-semidefinite";
    case LdltStatus::kIndefinite:
      return "indefinite";
  }
  return "unknown";
}

LdltResult RationalLdlt(const RationalMatrix& q) {
  if (!q.is_symmetric()) {
    throw std::invalid_argument("LDLT needs a symmetric matrix");
  }
  const int n = q.rows();
  RationalMatrix a = q;
  LdltResult r;
  r.lower = RationalMatrix::Identity(n);
  r.permutation.resize(n);
  for (int i = 0; i < n; ++i) r.permutation[i] = i;
  bool negative = false;
  bool zero = false;
  Scalar mag;
  for (int k = 0; k < n; ++k) {
    int best = k;
    Scalar best_mag = abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      mag = abs(a(i, i));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best_mag == 0) {
      // Remaining diagonal is zero; PSD only if the whole block is zero.
      for (int i = k; i < n && r.complete; ++i) {
        for (int j = k; j < n; ++j) {
          if (a(i, j) != 0) {
            r.complete = false;
            break;
          }
        }
      }
      if (!r.complete) {
        r.status = LdltStatus::kIndefinite;
        return r;
      }
      for (int i = k; i < n; ++i) r.pivots.push_back(0);
      zero = true;
      break;
    }
    if (best != k) {
      std::swap(r.permutation[k], r.permutation[best]);
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      for (int i = 0; i < n; ++i) std::swap(a(i, k), a(i, best));
      for (int j = 0; j < k; ++j) std::swap(r.lower(k, j), r.lower(best, j));
    }
    const Scalar d = a(k, k);
    r.pivots.push_back(d);
    if (d < 0) negative = true;
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      r.lower(i, k) = a(i, k) / d;
    }
    for (int i = k + 1; i < n; ++i) {
      const Scalar& lik = r.lower(i, k);
      if (lik == 0) continue;
      for (int j = k + 1; j <= i; ++j) {
        if (a(k, j) == 0) continue;
        a(i, j) -= lik * a(k, j);
        a(j, i) = a(i, j);
      }
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) = 0;
      a(k, i) = 0;
    }
  }
  if (negative) {
    r.status = LdltStatus::kIndefinite;
  } else if (zero) {
    r.status = LdltStatus::kPositiveSemidefinite;
  } else {
    r.status = LdltStatus::kPositiveDefinite;
  }
  return r;
}

GramCertificate::GramCertificate(MonomialBasis b, RationalMatrix q)
    : basis(std::move(b)),
      gram(std::move(q)),
      multiplier(Polynomial::Constant(basis.num_vars(), Scalar(1))) {}

GramCertificate::GramCertificate(MonomialBasis b, RationalMatrix q,
                                 Polynomial m, Scalar s)
    : basis(std::move(b)),
      gram(std::move(q)),
      multiplier(std::move(m)),
      scale(std::move(s)) {}

Polynomial GramPolynomial(const MonomialBasis& basis, const RationalMatrix& q,
                          const Scalar& scale) {
  const int n = basis.size();
  if (q.rows() != n || q.cols() != n) {
    throw std::invalid_argument("gram dimension " + std::to_string(q.rows()) +
                                " does not match basis size " +
                                std::to_string(n));
  }
  Polynomial::TermMap acc;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Scalar& v = q(i, j);
      if (v == 0) continue;
      Scalar term = i == j ? v : 2 * v;
      auto [it, inserted] = acc.try_emplace(basis[i] * basis[j], term);
      if (!inserted) it->second += term;
    }
  }
  if (scale != 1) {
    for (auto& [m, c] : acc) c *= scale;
  }
  return Polynomial(basis.num_vars(), std::move(acc));
}

VerificationReport VerifyGram(const Polynomial& p, const GramCertificate& cert) {
  if (!cert.gram.is_symmetric()) {
    throw std::invalid_argument("gram matrix is not symmetric");
  }
  if (cert.scale <= 0) throw std::invalid_argument("scale must be positive");
  if (p.num_vars() != cert.basis.num_vars() ||
      cert.multiplier.num_vars() != p.num_vars()) {
    throw std::invalid_argument("certificate and polynomial variable sets differ");
  }
  VerificationReport report;
  Polynomial lhs = cert.multiplier * p;
  Polynomial rhs = GramPolynomial(cert.basis, cert.gram, cert.scale);
  Polynomial diff = lhs - rhs;
  LdltResult ldlt = RationalLdlt(cert.gram);
  report.psd_status = ldlt.status;
  report.pivots = ldlt.pivots;
  if (!diff.is_zero()) {
    const Monomial& m = diff.terms().begin()->first;
    report.failure = VerificationReport::Failure::kIdentity;
    report.mismatch = m;
    report.mismatch_lhs = lhs.coefficient(m);
    report.mismatch_rhs = rhs.coefficient(m);
    report.message = "polynomial identity fails";
    return report;
  }
  if (ldlt.status == LdltStatus::kIndefinite) {
    report.failure = VerificationReport::Failure::kNotPsd;
    report.message = "gram matrix is not positive semidefinite";
    return report;
  }
  report.valid = true;
  report.message = "identity holds exactly; gram matrix " + ToString(ldlt.status);
  return report;
}

RationalMatrix MomentMatrix(const SeparationCertificate& cert) {
  if (cert.dual.size() != static_cast<std::size_t>(cert.ordering.size())) {
    throw std::invalid_argument("dual vector length does not match ordering");
  }
  const int n = cert.moment_basis.size();
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      int k = cert.ordering.IndexOf(cert.moment_basis[i] * cert.moment_basis[j]);
      if (k < 0) {
        throw std::invalid_argument(
            "moment basis product missing from ordering");
      }
      m(i, j) = cert.dual[k];
      m(j, i) = cert.dual[k];
    }
  }
  return m;
}

VerificationReport VerifySeparation(const Polynomial& t,
                                    const SeparationCertificate& cert) {
  if (t.num_vars() != cert.ordering.num_vars() ||
      cert.moment_basis.num_vars() != t.num_vars()) {
    throw std::invalid_argument("certificate and polynomial variable sets differ");
  }
  if (cert.dual.size() != static_cast<std::size_t>(cert.ordering.size())) {
    throw std::invalid_argument("dual vector length does not match ordering");
  }
  VerificationReport report;
  Scalar pairing = 0;
  for (const auto& [m, c] : t.terms()) {
    int k = cert.ordering.IndexOf(m);
    if (k < 0) {
      throw std::invalid_argument("target has a monomial outside the ordering");
    }
    pairing += c * cert.dual[k];
  }
  report.pairing = pairing;
  LdltResult ldlt = RationalLdlt(MomentMatrix(cert));
  report.psd_status = ldlt.status;
  report.pivots = ldlt.pivots;
  if (pairing >= 0) {
    report.failure = VerificationReport::Failure::kPairingNonNegative;
    report.message = "pairing is not negative";
    return report;
  }
  if (ldlt.status == LdltStatus::kIndefinite) {
    report.failure = VerificationReport::Failure::kNotPsd;
    report.message = "moment matrix is not positive semidefinite";
    return report;
  }
  report.valid = true;
  report.message = "pairing negative; moment matrix " + ToString(ldlt.status);
  return report;
}

MonomialBasis ProductSupport(const MonomialBasis& basis) {
  std::map<Monomial, int, GradedLexLess> seen;
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) seen.emplace(basis[i] * basis[j], 0);
  }
  std::vector<Monomial> out;
  out.reserve(seen.size());
  for (auto& [m, unused] : seen) out.push_back(m);
  return MonomialBasis(basis.num_vars(), std::move(out));
}

}  // namespace sosconvex
