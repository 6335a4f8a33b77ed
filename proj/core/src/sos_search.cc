#include "sosconvex/sos_search.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

namespace sosconvex {
namespace {

using MonomialCount = std::map<Monomial, int, GradedLexLess>;

// Pairs (i <= j) of basis positions grouped by their product monomial, in
// the order of `ordering`.
std::vector<std::vector<std::pair<int, int>>> PairsByMonomial(
    const MonomialBasis& basis, const MonomialBasis& ordering) {
  std::vector<std::vector<std::pair<int, int>>> pairs(ordering.size());
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = i; j < basis.size(); ++j) {
      int k = ordering.IndexOf(basis[i] * basis[j]);
      if (k < 0) throw std::logic_error("product missing from ordering");
      pairs[k].emplace_back(i, j);
    }
  }
  return pairs;
}

int OrderedCount(const std::vector<std::pair<int, int>>& pairs) {
  int n = 0;
  for (auto [i, j] : pairs) n += i == j ? 1 : 2;
  return n;
}

// Power of two closest below the largest magnitude, as an exponent.
int ScaleExponent(double max_abs) {
  if (!(max_abs > 0) || !std::isfinite(max_abs)) return 0;
  return static_cast<int>(std::floor(std::log2(max_abs)));
}

Scalar Pow2(int e) {
  mpz_class v = 1;
  if (e >= 0) {
    v <<= e;
    return Scalar(v);
  }
  v <<= -e;
  return Scalar(1) / Scalar(v);
}

Scalar RoundScaled(double v, int exponent, int bits) {
  return RoundToDyadic(std::ldexp(v, -exponent), bits) * Pow2(exponent);
}

// Best rational approximation with denominator at most max_den, or nullopt
// when it is further than tol from v.
std::optional<Scalar> SmallRational(double v, long max_den, double tol) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (std::abs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    const long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    const long h2 = ai * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = x - a;
    if (std::abs(v - static_cast<double>(h1) / k1) <= tol * 1e-3 ||
        frac < 1e-15) {
      break;
    }
    x = 1.0 / frac;
  }
  if (k1 == 0) return std::nullopt;
  if (std::abs(v - static_cast<double>(h1) / k1) > tol) return std::nullopt;
  Scalar q(h1, k1);
  q.canonicalize();
  return q;
}

// Gauss-Newton refinement of a factor L so that zᵀLLᵀz matches the scaled
// target coefficients t; steps are least-norm, so the rotation freedom of L
// does not matter.
Eigen::MatrixXd RefineFactor(
    Eigen::MatrixXd l,
    const std::vector<std::vector<std::pair<int, int>>>& pairs,
    const Eigen::VectorXd& t) {
  const int n = static_cast<int>(l.rows()), r = static_cast<int>(l.cols());
  const int m = static_cast<int>(pairs.size());
  auto residual = [&](const Eigen::MatrixXd& f) {
    Eigen::VectorXd res = -t;
    for (int k = 0; k < m; ++k) {
      for (auto [i, j] : pairs[k]) {
        res(k) += (i == j ? 1.0 : 2.0) * f.row(i).dot(f.row(j));
      }
    }
    return res;
  };
  Eigen::VectorXd res = residual(l);
  for (int iter = 0; iter < 30 && res.norm() > 1e-15 * (1 + t.norm()); ++iter) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, n * r);
    for (int k = 0; k < m; ++k) {
      for (auto [i, j] : pairs[k]) {
        for (int a = 0; a < r; ++a) {
          if (i == j) {
            jac(k, i * r + a) += 2 * l(i, a);
          } else {
            jac(k, i * r + a) += 2 * l(j, a);
            jac(k, j * r + a) += 2 * l(i, a);
          }
        }
      }
    }
    Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-res);
    Eigen::MatrixXd next = l;
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < r; ++a) next(i, a) += step(i * r + a);
    }
    Eigen::VectorXd next_res = residual(next);
    if (!(next_res.norm() < res.norm())) break;
    l = std::move(next);
    res = std::move(next_res);
  }
  return l;
}

// Gauss-Newton on the factor L together with a moment functional y whose
// moment matrix M(y) should span the complement of the face: the target
// equations, LᵀM(y) = 0 and a unit trace of M(y). Complementarity removes
// the singular directions of the plain problem, so the refined factor
// reaches full double accuracy.
Eigen::MatrixXd RefineWithMoments(
    Eigen::MatrixXd l, Eigen::VectorXd y,
    const std::vector<std::vector<std::pair<int, int>>>& pairs,
    const Eigen::VectorXd& t) {
  const int n = static_cast<int>(l.rows()), r = static_cast<int>(l.cols());
  const int m = static_cast<int>(pairs.size());
  Eigen::MatrixXi idx(n, n);
  Eigen::VectorXd diag_count = Eigen::VectorXd::Zero(m);
  for (int k = 0; k < m; ++k) {
    for (auto [i, j] : pairs[k]) {
      idx(i, j) = k;
      idx(j, i) = k;
      if (i == j) diag_count(k) += 1;
    }
  }
  const int rows = m + r * n + 1, cols = n * r + m;
  auto residual = [&](const Eigen::MatrixXd& f, const Eigen::VectorXd& w) {
    Eigen::VectorXd res(rows);
    res.head(m) = -t;
    for (int k = 0; k < m; ++k) {
      for (auto [i, j] : pairs[k]) {
        res(k) += (i == j ? 1.0 : 2.0) * f.row(i).dot(f.row(j));
      }
    }
    Eigen::MatrixXd mom(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) mom(i, j) = w(idx(i, j));
    }
    Eigen::MatrixXd lm = f.transpose() * mom;
    for (int a = 0; a < r; ++a) res.segment(m + a * n, n) = lm.row(a);
    res(rows - 1) = diag_count.dot(w) - 1;
    return res;
  };
  Eigen::VectorXd res = residual(l, y);
  for (int iter = 0; iter < 50 && res.norm() > 1e-15 * (1 + t.norm());
       ++iter) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, cols);
    for (int k = 0; k < m; ++k) {
      for (auto [i, j] : pairs[k]) {
        for (int a = 0; a < r; ++a) {
          if (i == j) {
            jac(k, i * r + a) += 2 * l(i, a);
          } else {
            jac(k, i * r + a) += 2 * l(j, a);
            jac(k, j * r + a) += 2 * l(i, a);
          }
        }
      }
    }
    for (int a = 0; a < r; ++a) {
      for (int j = 0; j < n; ++j) {
        const int row = m + a * n + j;
        for (int i = 0; i < n; ++i) {
          jac(row, i * r + a) += y(idx(i, j));
          jac(row, n * r + idx(i, j)) += l(i, a);
        }
      }
    }
    jac.row(rows - 1).tail(m) = diag_count.transpose();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(jac,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-7);
    const Eigen::VectorXd step = svd.solve(-res);
    bool improved = false;
    for (double damping = 1; damping > 1e-3 && !improved; damping /= 2) {
      Eigen::MatrixXd next = l;
      for (int i = 0; i < n; ++i) {
        for (int a = 0; a < r; ++a) next(i, a) += damping * step(i * r + a);
      }
      Eigen::VectorXd next_y = y + damping * step.tail(m);
      Eigen::VectorXd next_res = residual(next, next_y);
      if (next_res.norm() < res.norm()) {
        l = std::move(next);
        y = std::move(next_y);
        res = std::move(next_res);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return l;
}

struct RowSpace {
  RationalMatrix basis;
  std::vector<int> pivots;
};

// Exact rational basis, in reduced row echelon form, of the row space of m,
// or nullopt when some entry has no nearby small-denominator rational.
std::optional<RowSpace> RationalRowSpace(Eigen::MatrixXd m, double entry_tol,
                                         double max_den) {
  const int r = static_cast<int>(m.rows()), n = static_cast<int>(m.cols());
  std::vector<bool> used(n, false);
  std::vector<int> pivots;
  for (int row = 0; row < r; ++row) {
    int col = -1;
    double best = 0;
    for (int j = 0; j < n; ++j) {
      if (!used[j] && std::abs(m(row, j)) > best) {
        best = std::abs(m(row, j));
        col = j;
      }
    }
    if (col < 0 || best < 1e-12) return std::nullopt;
    used[col] = true;
    pivots.push_back(col);
    m.row(row) /= m(row, col);
    for (int other = 0; other < r; ++other) {
      if (other != row) m.row(other) -= m(other, col) * m.row(row);
    }
  }
  // Entries of an exact echelon basis share a denominator; build it up one
  // entry at a time and require every entry to be close to a multiple.
  double den = 1;
  for (int a = 0; a < r; ++a) {
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double x = m(a, j) * den;
      const double frac = x - std::floor(x);
      if (std::min(frac, 1 - frac) <= entry_tol * den) continue;
      auto q = SmallRational(frac, static_cast<long>(max_den / den),
                             entry_tol * den);
      if (!q) return std::nullopt;
      den *= q->get_den().get_d();
      if (den > max_den) return std::nullopt;
    }
  }
  RowSpace out{RationalMatrix(r, n), pivots};
  const Scalar d(static_cast<long>(den));
  for (int a = 0; a < r; ++a) {
    for (int j = 0; j < n; ++j) {
      if (used[j]) {
        out.basis(a, j) = pivots[a] == j ? 1 : 0;
        continue;
      }
      const double x = m(a, j) * den;
      if (std::abs(x - std::nearbyint(x)) > entry_tol * den * 10) {
        return std::nullopt;
      }
      Scalar v(mpz_class(std::nearbyint(x)));
      v /= d;
      out.basis(a, j) = v;
    }
  }
  return out;
}

// Some solution of the consistent system a·x = rhs, with free variables set
// to zero; nullopt when the system is inconsistent.
std::optional<std::vector<Scalar>> SolveExact(RationalMatrix a,
                                              std::vector<Scalar> rhs) {
  const int rows = a.rows(), cols = a.cols();
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int i = row; i < rows; ++i) {
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != row) {
      for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(row, j));
      std::swap(rhs[piv], rhs[row]);
    }
    const Scalar inv = 1 / a(row, col);
    for (int j = col; j < cols; ++j) a(row, j) *= inv;
    rhs[row] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Scalar f = a(i, col);
      for (int j = col; j < cols; ++j) {
        if (a(row, j) != 0) a(i, j) -= f * a(row, j);
      }
      rhs[i] -= f * rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int i = row; i < rows; ++i) {
    if (rhs[i] != 0) return std::nullopt;
  }
  std::vector<Scalar> x(cols, Scalar(0));
  for (int i = 0; i < row; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

// Rounds R and projects it exactly so that zᵀ(BᵀRB)z matches the target;
// `r0` is the numeric R in the target's scale.
std::optional<GramCertificate> RoundOnFace(const RowSpace& face,
                                           const Eigen::MatrixXd& r0,
                                           const Polynomial& p,
                                           const MonomialBasis& basis,
                                           const Polynomial& multiplier,
                                           int max_bits) {
  const RationalMatrix& b = face.basis;
  const int r = b.rows(), n = b.cols();
  const int nv = basis.num_vars();
  // w_a = Σ_j B_aj z_j, so zᵀ(BᵀRB)z = Σ R_ab w_a w_b.
  std::vector<Polynomial> w(r, Polynomial(nv));
  for (int a = 0; a < r; ++a) {
    for (int j = 0; j < n; ++j) {
      if (b(a, j) != 0) w[a] += Polynomial::Term(b(a, j), basis[j]);
    }
  }
  const Polynomial target = multiplier * p;
  std::vector<std::pair<int, int>> unknowns;
  std::map<Monomial, int, GradedLexLess> rows;
  for (const auto& [m, c] : target.terms()) rows.emplace(m, 0);
  std::vector<Polynomial> products;
  for (int a = 0; a < r; ++a) {
    for (int c = a; c < r; ++c) {
      unknowns.emplace_back(a, c);
      products.push_back((a == c ? Scalar(1) : Scalar(2)) * (w[a] * w[c]));
      for (const auto& [m, v] : products.back().terms()) rows.emplace(m, 0);
    }
  }
  int k = 0;
  for (auto& [m, idx] : rows) idx = k++;
  const int u = static_cast<int>(unknowns.size());
  RationalMatrix a(k, u);
  for (int col = 0; col < u; ++col) {
    for (const auto& [m, v] : products[col].terms()) a(rows.at(m), col) = v;
  }
  std::vector<Scalar> t(k, Scalar(0));
  for (const auto& [m, c] : target.terms()) t[rows.at(m)] = c;

  // Normal matrix for the least-norm correction, formed once.
  RationalMatrix aat(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      Scalar s = 0;
      for (int col = 0; col < u; ++col) {
        if (a(i, col) != 0 && a(j, col) != 0) s += a(i, col) * a(j, col);
      }
      aat(i, j) = s;
      aat(j, i) = s;
    }
  }

  const int exponent = ScaleExponent(r0.cwiseAbs().maxCoeff());
  for (int bits = 8; bits <= max_bits; bits += 8) {
    std::vector<Scalar> x(u);
    for (int col = 0; col < u; ++col) {
      auto [i, j] = unknowns[col];
      x[col] = RoundScaled(0.5 * (r0(i, j) + r0(j, i)), exponent, bits);
    }
    std::vector<Scalar> res = t;
    for (int i = 0; i < k; ++i) {
      for (int col = 0; col < u; ++col) {
        if (a(i, col) != 0) res[i] -= a(i, col) * x[col];
      }
    }
    auto y = SolveExact(aat, res);
    if (!y) return std::nullopt;
    for (int col = 0; col < u; ++col) {
      for (int i = 0; i < k; ++i) {
        if (a(i, col) != 0) x[col] += a(i, col) * (*y)[i];
      }
    }
    RationalMatrix rm(r, r);
    for (int col = 0; col < u; ++col) {
      auto [i, j] = unknowns[col];
      rm(i, j) = x[col];
      rm(j, i) = x[col];
    }
    if (RationalLdlt(rm).status == LdltStatus::kIndefinite) continue;
    RationalMatrix q = Transpose(b) * rm * b;
    GramCertificate cert(basis, std::move(q), multiplier, Scalar(1));
    if (VerifyGram(p, cert).valid) return cert;
  }
  return std::nullopt;
}

// Rounding restricted to a face {Q = BᵀRB} of the Gram spectrahedron: the
// numeric matrix is truncated to rank r, refined so that the rank-r factor
// matches the target to machine precision, and its row space is recovered
// exactly. Several ranks suggested by the spectrum are tried, and a dual
// functional, when given, pins the face down through complementarity.
std::optional<GramCertificate> FacialRound(const Eigen::MatrixXd& gram,
                                           const Polynomial& p,
                                           const MonomialBasis& basis,
                                           const Polynomial& multiplier,
                                           int max_bits,
                                           const std::vector<double>& moments) {
  const int n = basis.size();
  const Polynomial target = multiplier * p;
  const double scale = MaxAbsCoefficient(target).get_d();
  if (!(scale > 0)) return std::nullopt;
  MonomialBasis ordering = ProductSupport(basis);
  auto pairs = PairsByMonomial(basis, ordering);
  Eigen::VectorXd t(ordering.size());
  for (int k = 0; k < ordering.size(); ++k) {
    t(k) = target.coefficient(ordering[k]).get_d() / scale;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram / scale);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0)) return std::nullopt;
  std::vector<int> ranks;
  for (double threshold : {1e-6, 1e-4, 1e-8, 1e-3}) {
    int r = 0;
    for (int i = 0; i < n; ++i) r += ev(i) > threshold * top ? 1 : 0;
    if (r > 0 && r < n &&
        std::find(ranks.begin(), ranks.end(), r) == ranks.end()) {
      ranks.push_back(r);
    }
  }
  // An irrational real zero forces every rational Gram matrix onto a face
  // smaller than the numeric one, so lower ranks are tried as well.
  if (!ranks.empty()) {
    const int numeric_rank = *std::max_element(ranks.begin(), ranks.end());
    for (int r = numeric_rank - 1; r >= 1 && r >= numeric_rank - 6; --r) {
      if (std::find(ranks.begin(), ranks.end(), r) == ranks.end()) {
        ranks.push_back(r);
      }
    }
  }
  for (int r : ranks) {
    Eigen::MatrixXd l(n, r);
    for (int a = 0; a < r; ++a) {
      l.col(a) = es.eigenvectors().col(n - 1 - a) * std::sqrt(ev(n - 1 - a));
    }
    std::vector<Eigen::MatrixXd> factors;
    if (static_cast<int>(moments.size()) == ordering.size()) {
      factors.push_back(RefineWithMoments(
          l, Eigen::Map<const Eigen::VectorXd>(moments.data(), moments.size()),
          pairs, t));
    }
    factors.push_back(RefineFactor(std::move(l), pairs, t));
    for (const Eigen::MatrixXd& f : factors) {
      const Eigen::MatrixXd q = f * f.transpose() * scale;
      // Without complementarity the solution set is singular and the
      // refined accuracy is about the square root of machine precision, so
      // looser recoveries follow.
      for (auto [tol, max_den] :
           {std::pair{1e-12, 1e12}, std::pair{1e-11, 1e9},
            std::pair{1e-7, 1e5}, std::pair{1e-5, 1e3}}) {
        std::optional<RowSpace> face =
            RationalRowSpace(f.transpose(), tol, max_den);
        if (!face) continue;
        Eigen::MatrixXd r0(r, r);
        for (int x = 0; x < r; ++x) {
          for (int y = 0; y < r; ++y) {
            r0(x, y) = q(face->pivots[x], face->pivots[y]);
          }
        }
        auto cert = RoundOnFace(*face, r0, p, basis, multiplier, max_bits);
        if (cert) return cert;
      }
    }
  }
  return std::nullopt;
}

MonomialBasis WithExtra(const MonomialBasis& base,
                        const std::vector<Monomial>& extra) {
  std::map<Monomial, int, GradedLexLess> all;
  for (const auto& m : base.monomials()) all.emplace(m, 0);
  for (const auto& m : extra) all.emplace(m, 0);
  std::vector<Monomial> out;
  for (auto& [m, unused] : all) out.push_back(m);
  return MonomialBasis(base.num_vars(), std::move(out));
}

}  // namespace

PrunedBasis PruneBasis(const Polynomial& target, const MonomialBasis& basis) {
  PrunedBasis out;
  std::vector<Monomial> current = basis.monomials();
  for (int round = 1;; ++round) {
    MonomialCount off;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        ++off[current[i] * current[j]];
      }
    }
    std::vector<Monomial> keep;
    bool removed_any = false;
    for (const Monomial& z : current) {
      Monomial sq = z * z;
      if (off.count(sq)) {
        keep.push_back(z);
        continue;
      }
      Scalar c = target.coefficient(sq);
      if (c < 0 && !out.negative_square) out.negative_square = z;
      if (c == 0) {
        out.removed.push_back(z);
        out.removal_round.push_back(round);
        removed_any = true;
      } else {
        keep.push_back(z);
      }
    }
    current = std::move(keep);
    if (out.negative_square || !removed_any) break;
  }
  out.basis = MonomialBasis(basis.num_vars(), std::move(current));
  return out;
}

Scalar GaussianMoment(const Monomial& m) {
  Scalar v = 1;
  for (int e : m.exponents()) {
    if (e % 2 != 0) return 0;
    for (int k = e - 1; k > 1; k -= 2) v *= k;
  }
  return v;
}

SosSearchResult SosGramSearch(const Polynomial& p, const MonomialBasis& basis,
                              const Polynomial& multiplier,
                              const SosSearchOptions& options) {
  if (p.num_vars() != basis.num_vars() ||
      multiplier.num_vars() != p.num_vars()) {
    throw std::invalid_argument("sos search: variable sets differ");
  }
  SosSearchResult res;
  res.target = multiplier * p;
  const Polynomial& target = res.target;
  {
    MonomialBasis support = ProductSupport(basis);
    for (const auto& [m, c] : target.terms()) {
      if (support.IndexOf(m) < 0) {
        throw std::invalid_argument(
            "basis cannot express a monomial of the target");
      }
    }
  }
  if (target.is_zero()) {
    res.kind = SosSearchResult::Kind::kNumericGram;
    res.basis = MonomialBasis(basis.num_vars(), {});
    res.gram = Eigen::MatrixXd::Zero(0, 0);
    res.margin = 0;
    res.diagnostic = "zero target";
    return res;
  }

  PrunedBasis pruned;
  if (options.prune) {
    pruned = PruneBasis(target, basis);
  } else {
    pruned.basis = basis;
  }
  res.basis = pruned.basis;
  res.pruning = pruned;

  if (pruned.negative_square) {
    const Monomial sq = *pruned.negative_square * *pruned.negative_square;
    SeparationCertificate cert;
    cert.ordering = ProductSupport(res.basis);
    cert.dual.assign(cert.ordering.size(), Scalar(0));
    cert.dual[cert.ordering.IndexOf(sq)] = 1;
    cert.moment_basis = res.basis;
    res.kind = SosSearchResult::Kind::kDualRay;
    res.exact_separation = cert;
    res.ordering = cert.ordering;
    res.diagnostic = "square of an isolated basis monomial has a negative coefficient";
    return res;
  }

  res.ordering = ProductSupport(res.basis);
  for (const auto& [m, c] : target.terms()) {
    if (res.ordering.IndexOf(m) >= 0) continue;
    // No admissible square can produce m.
    SeparationCertificate cert;
    cert.ordering = WithExtra(res.ordering, {m});
    cert.dual.assign(cert.ordering.size(), Scalar(0));
    cert.dual[cert.ordering.IndexOf(m)] = c > 0 ? -1 : 1;
    cert.moment_basis = res.basis;
    res.kind = SosSearchResult::Kind::kDualRay;
    res.exact_separation = cert;
    res.ordering = cert.ordering;
    res.diagnostic = "target monomial outside the reduced product support";
    return res;
  }

  const int n = res.basis.size();
  const int m = res.ordering.size();
  res.scale = MaxAbsCoefficient(target).get_d();
  auto pairs = PairsByMonomial(res.basis, res.ordering);

  std::vector<double> t(m);
  for (int k = 0; k < m; ++k) {
    t[k] = target.coefficient(res.ordering[k]).get_d() / res.scale;
  }

  // Least-norm Gram matrix fixes the offset that keeps t = 0 strictly
  // feasible.
  Eigen::MatrixXd ls = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> diag_count(m, 0);
  for (int k = 0; k < m; ++k) {
    const double v = t[k] / OrderedCount(pairs[k]);
    for (auto [i, j] : pairs[k]) {
      ls(i, j) = v;
      ls(j, i) = v;
      if (i == j) ++diag_count[k];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ls, Eigen::EigenvaluesOnly);
  const double offset = 1.0 + std::max(0.0, -es.eigenvalues()[0]);

  SdpProblem prob;
  prob.block_dims = {n, 1};
  for (int k = 0; k < m; ++k) {
    SdpConstraint c;
    for (auto [i, j] : pairs[k]) c.entries.push_back({0, i, j, 1.0});
    if (diag_count[k] > 0) {
      c.entries.push_back({1, 0, 0, static_cast<double>(diag_count[k])});
    }
    c.rhs = t[k] + offset * diag_count[k];
    prob.constraints.push_back(std::move(c));
  }
  prob.objective.push_back({1, 0, 0, -1.0});

  SdpSolution sol = Solve(prob, options.sdp);
  res.sdp_status = sol.status;
  res.iterations = sol.iterations;
  if (sol.status != SdpStatus::kFeasible) {
    res.kind = SosSearchResult::Kind::kFailed;
    res.diagnostic = "sdp solver stopped with status " + ToString(sol.status);
    return res;
  }
  const double tval = sol.x[1](0, 0);
  res.margin = tval - offset;
  {
    Eigen::MatrixXd g = sol.x[0];
    g.diagonal().array() += res.margin;
    res.gram = g * res.scale;
  }
  if (res.margin > options.margin_tolerance) {
    res.kind = SosSearchResult::Kind::kNumericGram;
    std::vector<double> c(m);
    double trace = 0;
    for (int k = 0; k < m; ++k) {
      c[k] = -sol.y[k];
      trace += c[k] * diag_count[k];
    }
    if (trace > 0) {
      for (double& v : c) v /= trace;
      res.functional = std::move(c);
    }
    return res;
  }
  if (res.margin < -options.margin_tolerance) {
    std::vector<double> c(m);
    double trace = 0;
    for (int k = 0; k < m; ++k) {
      c[k] = -sol.y[k];
      trace += c[k] * diag_count[k];
    }
    if (!(trace > 0)) {
      res.kind = SosSearchResult::Kind::kFailed;
      res.diagnostic = "dual functional has non-positive trace";
      return res;
    }
    double pairing = 0;
    for (int k = 0; k < m; ++k) {
      c[k] /= trace;
      pairing += c[k] * t[k];
    }
    res.functional = std::move(c);
    res.margin = pairing;
    res.kind = SosSearchResult::Kind::kDualRay;
    return res;
  }
  res.kind = SosSearchResult::Kind::kFailed;
  res.diagnostic = "eigenvalue margin within tolerance of zero";
  return res;
}

std::optional<GramCertificate> RoundToRational(const Eigen::MatrixXd& gram,
                                               const Polynomial& p,
                                               const MonomialBasis& basis,
                                               const Polynomial& multiplier,
                                               int max_bits,
                                               const std::vector<double>& moments) {
  const int n = basis.size();
  if (gram.rows() != n || gram.cols() != n) {
    throw std::invalid_argument("numeric gram does not match basis size");
  }
  const Polynomial target = multiplier * p;
  if (n == 0) {
    if (!target.is_zero()) return std::nullopt;
    return GramCertificate(basis, RationalMatrix(0, 0), multiplier, Scalar(1));
  }
  MonomialBasis ordering = ProductSupport(basis);
  for (const auto& [m, c] : target.terms()) {
    if (ordering.IndexOf(m) < 0) return std::nullopt;
  }
  auto pairs = PairsByMonomial(basis, ordering);
  const int exponent = ScaleExponent(gram.cwiseAbs().maxCoeff());

  for (int bits = 8; bits <= max_bits; bits += 8) {
    RationalMatrix q(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        q(i, j) = RoundScaled(0.5 * (gram(i, j) + gram(j, i)), exponent, bits);
        q(j, i) = q(i, j);
      }
    }
    // Orthogonal projection onto {Q : coefficients of zᵀQz match target}.
    for (int k = 0; k < ordering.size(); ++k) {
      Scalar sum = 0;
      for (auto [i, j] : pairs[k]) sum += i == j ? q(i, j) : 2 * q(i, j);
      Scalar delta = (target.coefficient(ordering[k]) - sum) /
                     OrderedCount(pairs[k]);
      if (delta == 0) continue;
      for (auto [i, j] : pairs[k]) {
        q(i, j) += delta;
        if (i != j) q(j, i) = q(i, j);
      }
    }
    if (RationalLdlt(q).status == LdltStatus::kIndefinite) continue;
    GramCertificate cert(basis, std::move(q), multiplier, Scalar(1));
    if (VerifyGram(p, cert).valid) return cert;
  }
  return FacialRound(gram, p, basis, multiplier, max_bits, moments);
}

std::optional<SeparationCertificate> DualRayToSeparation(
    const std::vector<double>& ray, const MonomialBasis& ordering,
    const MonomialBasis& moment_basis, const Polynomial& target) {
  if (ray.size() != static_cast<std::size_t>(ordering.size())) {
    throw std::invalid_argument("ray length does not match ordering");
  }
  if (std::all_of(ray.begin(), ray.end(), [](double v) { return v == 0; })) {
    return std::nullopt;
  }
  for (const auto& [m, c] : target.terms()) {
    if (ordering.IndexOf(m) < 0) return std::nullopt;
  }
  const int m = ordering.size();
  const double scale = MaxAbsCoefficient(target).get_d();
  if (!(scale > 0)) return std::nullopt;

  double trace_ray = 0, trace0 = 0;
  std::vector<double> gauss(m);
  for (int k = 0; k < m; ++k) gauss[k] = GaussianMoment(ordering[k]).get_d();
  for (const Monomial& z : moment_basis.monomials()) {
    int k = ordering.IndexOf(z * z);
    if (k < 0) return std::nullopt;
    trace_ray += ray[k];
    trace0 += gauss[k];
  }
  if (!(trace_ray > 0) || !(trace0 > 0)) return std::nullopt;
  double pair_ray = 0, pair0 = 0;
  std::vector<double> c(m), c0(m);
  for (int k = 0; k < m; ++k) {
    c[k] = ray[k] / trace_ray;
    c0[k] = gauss[k] / trace0;
    const double tk = target.coefficient(ordering[k]).get_d() / scale;
    pair_ray += c[k] * tk;
    pair0 += c0[k] * tk;
  }
  double base = 1.0;
  if (pair_ray < 0 && pair0 > 0) base = std::min(1.0, -pair_ray / (2 * pair0));
  const double eps_factors[] = {1.0, 0.25, 1.0 / 16, 1.0 / 256, 0.0};
  const int bit_choices[] = {20, 32, 44, 52};
  for (double f : eps_factors) {
    std::vector<double> mixed(m);
    double max_abs = 0;
    for (int k = 0; k < m; ++k) {
      mixed[k] = c[k] + f * base * c0[k];
      max_abs = std::max(max_abs, std::abs(mixed[k]));
    }
    const int exponent = ScaleExponent(max_abs);
    for (int bits : bit_choices) {
      SeparationCertificate cert;
      cert.ordering = ordering;
      cert.moment_basis = moment_basis;
      cert.dual.reserve(m);
      for (int k = 0; k < m; ++k) {
        cert.dual.push_back(RoundScaled(mixed[k], exponent, bits));
      }
      if (VerifySeparation(target, cert).valid) return cert;
    }
  }
  return std::nullopt;
}

std::optional<SeparationCertificate> ExtendSeparation(
    const SeparationCertificate& cert, const PrunedBasis& pruned,
    const MonomialBasis& full_basis, const Polynomial& target) {
  if (pruned.removed.empty()) return cert;
  int last_round = 0;
  for (int r : pruned.removal_round) last_round = std::max(last_round, r);
  if (last_round > 5) return std::nullopt;
  std::map<Monomial, int, GradedLexLess> square_round;
  for (std::size_t i = 0; i < pruned.removed.size(); ++i) {
    square_round[pruned.removed[i] * pruned.removed[i]] = pruned.removal_round[i];
  }
  MonomialBasis ordering = ProductSupport(full_basis);
  for (const auto& [m, c] : target.terms()) {
    if (ordering.IndexOf(m) < 0) return std::nullopt;
  }
  Scalar top = 0;
  for (const auto& v : cert.dual) top = std::max(top, Scalar(abs(v)));
  if (top == 0) top = 1;
  for (int log_base : {4, 12, 24}) {
    // Squares of monomials removed earlier get far larger moments, so that
    // their rows dominate any coupling to later ones.
    Scalar base = Pow2(log_base);
    SeparationCertificate ext;
    ext.ordering = ordering;
    ext.moment_basis = full_basis;
    ext.dual.reserve(ordering.size());
    for (const Monomial& mono : ordering.monomials()) {
      int k = cert.ordering.IndexOf(mono);
      if (k >= 0) {
        ext.dual.push_back(cert.dual[k]);
        continue;
      }
      auto it = square_round.find(mono);
      if (it == square_round.end()) {
        ext.dual.push_back(0);
        continue;
      }
      int power = 1;
      for (int r = it->second; r < last_round; ++r) power *= 3;
      Scalar v = top;
      for (int e = 0; e < power; ++e) v *= base;
      ext.dual.push_back(v);
    }
    if (VerifySeparation(target, ext).valid) return ext;
  }
  return std::nullopt;
}

}  // namespace sosconvex
