#include "sosconvex/sos_analysis.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace sosconvex {
namespace {

int CeilHalf(int d) { return (d + 1) / 2; }

// Basis for yᵀU(x)y style targets: variables 0..num_x-1 are x, the rest y.
// `x_degree` is the largest x-degree of the coefficient matrix entries.
MonomialBasis YLinearBasis(int num_x, int num_y, int x_degree,
                           bool homogeneous) {
  const int total = num_x + num_y;
  if (homogeneous && x_degree % 2 == 0) {
    return StandardBasis(total, x_degree / 2 + 1, BasisStructure::kBipartite,
                         num_x);
  }
  return StandardBasis(total, CeilHalf(x_degree) + 1,
                       BasisStructure::kBipartiteNonHomogeneous, num_x);
}

ConvexityStatus FromSos(SosStatus s, WitnessKind kind) {
  ConvexityStatus out;
  out.witness = kind;
  switch (s.kind) {
    case SosStatus::Kind::kCertifiedSos:
      out.kind = ConvexityStatus::Kind::kSosConvex;
      break;
    case SosStatus::Kind::kCertifiedNotSos:
      out.kind = ConvexityStatus::Kind::kNotSosConvex;
      break;
    case SosStatus::Kind::kInconclusive:
      out.kind = ConvexityStatus::Kind::kInconclusive;
      break;
  }
  out.detail = std::move(s);
  return out;
}

}  // namespace

std::string ToString(SosStatus::Kind k) {
  switch (k) {
    case SosStatus::Kind::kCertifiedSos:
      return "certified-sos";
    case SosStatus::Kind::kCertifiedNotSos:
      return "certified-not-sos";
    case SosStatus::Kind::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string ToString(ConvexityStatus::Kind k) {
  switch (k) {
    case ConvexityStatus::Kind::kSosConvex:
      return "sos-convex";
    case ConvexityStatus::Kind::kNotSosConvex:
      return "not-sos-convex";
    case ConvexityStatus::Kind::kConvexNumeric:
      return "convex-by-multiplier";
    case ConvexityStatus::Kind::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

namespace {

SosStatus IsSosOverUnscaled(const Polynomial& p, const MonomialBasis& basis,
                            const Polynomial& multiplier,
                            const SosOptions& options) {
  SosStatus out;
  out.search_basis = basis;
  SosSearchResult res = SosGramSearch(p, basis, multiplier, options.search);
  out.target = res.target;
  out.margin = res.margin;
  switch (res.kind) {
    case SosSearchResult::Kind::kNumericGram: {
      auto cert = RoundToRational(res.gram, p, res.basis, multiplier,
                                  options.max_bits, res.functional);
      if (cert) {
        out.kind = SosStatus::Kind::kCertifiedSos;
        out.gram = std::move(cert);
        out.diagnostic = "exact gram certificate";
      } else {
        out.diagnostic = "numeric gram matrix found but rounding failed";
      }
      return out;
    }
    case SosSearchResult::Kind::kDualRay: {
      std::optional<SeparationCertificate> sep = res.exact_separation;
      if (!sep) {
        sep = DualRayToSeparation(res.functional, res.ordering, res.basis,
                                  res.target);
      }
      if (!sep) {
        // A margin this close to zero may be a singular Gram matrix.
        if (res.gram.rows() == res.basis.size() && res.gram.rows() > 0) {
          auto cert = RoundToRational(res.gram, p, res.basis, multiplier,
                                      options.max_bits, res.functional);
          if (cert) {
            out.kind = SosStatus::Kind::kCertifiedSos;
            out.gram = std::move(cert);
            out.diagnostic = "exact gram certificate on a face";
            return out;
          }
        }
        out.diagnostic = "dual ray found but rationalization failed";
        return out;
      }
      out.kind = SosStatus::Kind::kCertifiedNotSos;
      out.diagnostic = "exact separation certificate";
      if (!res.pruning.removed.empty()) {
        std::optional<SeparationCertificate> ext;
        if (options.extend_separation) {
          ext = ExtendSeparation(*sep, res.pruning, basis, res.target);
          if (!ext) {
            // The reduced functional may not extend; search the full basis.
            SosSearchOptions full = options.search;
            full.prune = false;
            SosSearchResult again = SosGramSearch(p, basis, multiplier, full);
            if (again.kind == SosSearchResult::Kind::kDualRay) {
              ext = DualRayToSeparation(again.functional, again.ordering,
                                        again.basis, again.target);
            }
          }
        }
        if (ext) {
          sep = std::move(ext);
        } else {
          out.diagnostic +=
              " over the reduced basis (removed monomials cannot occur in "
              "any Gram representation)";
        }
      }
      out.separation = std::move(sep);
      return out;
    }
    case SosSearchResult::Kind::kFailed:
      out.diagnostic = res.diagnostic;
      return out;
  }
  return out;
}

// Integer k with x_i -> 2^{k_i} x_i bringing the target's coefficients as
// close together as possible (least squares on their base-2 logarithms).
std::vector<int> EquilibrationExponents(const Polynomial& target) {
  const int n = target.num_vars();
  const int rows = static_cast<int>(target.num_terms());
  std::vector<int> k(n, 0);
  if (rows < 2 || n == 0) return k;
  Eigen::MatrixXd a(rows, n + 1);
  Eigen::VectorXd rhs(rows);
  int r = 0;
  for (const auto& [m, c] : target.terms()) {
    for (int i = 0; i < n; ++i) a(r, i) = m[i];
    a(r, n) = -1;
    rhs(r) = -std::log2(std::abs(c.get_d()));
    ++r;
  }
  Eigen::VectorXd sol = a.completeOrthogonalDecomposition().solve(rhs);
  for (int i = 0; i < n; ++i) {
    k[i] = static_cast<int>(std::lround(std::clamp(sol(i), -30.0, 30.0)));
  }
  return k;
}

Scalar MonomialWeight(const Monomial& m, const std::vector<int>& k) {
  long e = 0;
  for (int i = 0; i < m.num_vars(); ++i) e += static_cast<long>(k[i]) * m[i];
  mpz_class v = 1;
  v <<= static_cast<unsigned long>(std::labs(e));
  return e >= 0 ? Scalar(v) : Scalar(1) / Scalar(v);
}

Polynomial ScaleVariables(const Polynomial& p, const std::vector<int>& k) {
  Polynomial::TermMap terms;
  for (const auto& [m, c] : p.terms()) terms.emplace(m, c * MonomialWeight(m, k));
  return Polynomial(p.num_vars(), std::move(terms));
}

}  // namespace

SosStatus IsSosOver(const Polynomial& p, const MonomialBasis& basis,
                    const Polynomial& multiplier, const SosOptions& options) {
  std::vector<int> k(p.num_vars(), 0);
  if (options.equilibrate) k = EquilibrationExponents(multiplier * p);
  if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; })) {
    return IsSosOverUnscaled(p, basis, multiplier, options);
  }
  // Solve for p(Dx) with D = diag(2^k), then map the certificate back:
  // z(Dx) = E z(x) with E diagonal, so Gram matrices and moment matrices
  // transform by congruence.
  SosStatus out = IsSosOverUnscaled(ScaleVariables(p, k), basis,
                                    ScaleVariables(multiplier, k), options);
  out.target = multiplier * p;
  out.search_basis = basis;
  if (out.gram) {
    GramCertificate& g = *out.gram;
    std::vector<int> inverse(k.size());
    std::transform(k.begin(), k.end(), inverse.begin(), std::negate<int>());
    for (int i = 0; i < g.basis.size(); ++i) {
      const Scalar wi = MonomialWeight(g.basis[i], inverse);
      for (int j = 0; j < g.basis.size(); ++j) {
        g.gram(i, j) *= wi * MonomialWeight(g.basis[j], inverse);
      }
    }
    g.multiplier = multiplier;
    if (!VerifyGram(p, g).valid) {
      out.kind = SosStatus::Kind::kInconclusive;
      out.gram.reset();
      out.diagnostic = "certificate failed to transform back from scaled variables";
    }
  }
  if (out.separation) {
    SeparationCertificate& s = *out.separation;
    for (int i = 0; i < s.ordering.size(); ++i) {
      s.dual[i] *= MonomialWeight(s.ordering[i], k);
    }
    if (!VerifySeparation(out.target, s).valid) {
      out.kind = SosStatus::Kind::kInconclusive;
      out.separation.reset();
      out.diagnostic = "certificate failed to transform back from scaled variables";
    }
  }
  return out;
}

SosStatus IsSos(const Polynomial& p, const SosOptions& options) {
  const int n = p.num_vars();
  Polynomial one = Polynomial::Constant(n, Scalar(1));
  if (p.is_zero()) {
    return IsSosOver(p, MonomialBasis(n, {}), one, options);
  }
  const int d = p.degree();
  if (d % 2 != 0) {
    SosStatus out;
    out.target = p;
    out.diagnostic = "odd degree, not psd";
    return out;
  }
  MonomialBasis basis =
      p.is_homogeneous()
          ? StandardBasis(n, d / 2, BasisStructure::kHomogeneous)
          : StandardBasis(n, d / 2, BasisStructure::kPlain);
  return IsSosOver(p, basis, one, options);
}

MonomialBasis SosMatrixBasis(const PolyMatrix& u) {
  int max_deg = 0;
  int min_deg = -1;
  bool homogeneous = true;
  for (int i = 0; i < u.dim(); ++i) {
    for (int j = 0; j < u.dim(); ++j) {
      const Polynomial& e = u(i, j);
      if (e.is_zero()) continue;
      homogeneous = homogeneous && e.is_homogeneous();
      int lo = e.terms().begin()->first.degree();
      max_deg = std::max(max_deg, e.degree());
      min_deg = min_deg < 0 ? lo : std::min(min_deg, lo);
    }
  }
  homogeneous = homogeneous && min_deg == max_deg;
  return YLinearBasis(u.num_vars(), u.dim(), max_deg, homogeneous);
}

SosStatus IsSosMatrix(const PolyMatrix& u, const SosOptions& options) {
  Polynomial t = u.QuadraticForm();
  return IsSosOver(t, SosMatrixBasis(u),
                   Polynomial::Constant(t.num_vars(), Scalar(1)), options);
}

ConvexityStatus IsSosConvex(const Polynomial& p, WitnessKind kind,
                            const SosOptions& options) {
  const int n = p.num_vars();
  const int d = std::max(p.degree(), 0);
  if (kind.type == WitnessKind::kSecondOrder) {
    if (d < 2) {
      Polynomial zero(2 * n);
      ConvexityStatus out = FromSos(
          IsSosOver(zero, MonomialBasis(2 * n, {}),
                    Polynomial::Constant(2 * n, Scalar(1)), options),
          kind);
      return out;
    }
    PolyMatrix h = Hessian(p);
    SosStatus s = IsSosOver(h.QuadraticForm(),
                            YLinearBasis(n, n, d - 2, p.is_homogeneous()),
                            Polynomial::Constant(2 * n, Scalar(1)), options);
    return FromSos(std::move(s), kind);
  }
  BiPolynomial g = kind.type == WitnessKind::kFirstOrder
                       ? BuildGGrad(p)
                       : BuildGLambda(p, kind.lambda);
  Polynomial shifted = ShiftToDifference(g);
  ConvexityStatus out;
  if (shifted.is_zero()) {
    out = FromSos(IsSosOver(shifted, MonomialBasis(2 * n, {}),
                            Polynomial::Constant(2 * n, Scalar(1)), options),
                  kind);
  } else if (d % 2 != 0) {
    out.witness = kind;
    out.detail.target = shifted;
    out.detail.diagnostic = "odd degree, not psd";
  } else {
    MonomialBasis basis =
        p.is_homogeneous()
            ? StandardBasis(2 * n, d / 2, BasisStructure::kHomogeneous)
            : StandardBasis(2 * n, d / 2, BasisStructure::kPlain);
    out = FromSos(IsSosOver(shifted, basis,
                            Polynomial::Constant(2 * n, Scalar(1)), options),
                  kind);
  }
  out.note = "witness rewritten with y = x + u; certificate refers to g(x, x + u)";
  return out;
}

Polynomial MultipliedHessianForm(const Polynomial& p, const Polynomial& sigma) {
  const int n = p.num_vars();
  if (sigma.num_vars() != n) {
    throw std::invalid_argument("multiplier must be over the x variables");
  }
  return Embed(sigma, 2 * n, 0) * Hessian(p).QuadraticForm();
}

ConvexityStatus CheckConvexityMultiplier(const Polynomial& p, int max_r,
                                         const MultiplierOptions& options) {
  if (max_r < 0) throw std::invalid_argument("max_r must be nonnegative");
  const int n = p.num_vars();
  const int d = p.degree();
  ConvexityStatus out;
  out.witness = WitnessKind::SecondOrder();
  if (d < 2) {
    out.kind = ConvexityStatus::Kind::kConvexNumeric;
    out.multiplier = Polynomial::Constant(2 * n, Scalar(1));
    out.detail = IsSosOver(Polynomial(2 * n), MonomialBasis(2 * n, {}),
                           *out.multiplier, options.sos);
    out.note = "affine polynomial";
    return out;
  }

  struct Candidate {
    Polynomial sigma;
    int power;
  };
  std::vector<Candidate> candidates;
  if (!options.candidates.empty()) {
    for (const auto& c : options.candidates) {
      candidates.push_back({c, c.degree() / 2});
    }
  } else {
    candidates.push_back({Polynomial::Constant(n, Scalar(1)), 0});
    for (int r = 1; r <= max_r; ++r) {
      for (int size = 1; size <= n; ++size) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + size, true);
        do {
          Polynomial s(n);
          for (int i = 0; i < n; ++i) {
            if (pick[i]) s += Pow(Polynomial::Variable(n, i), 2);
          }
          candidates.push_back({Pow(s, r), r});
        } while (std::prev_permutation(pick.begin(), pick.end()));
      }
    }
  }

  PolyMatrix h = Hessian(p);
  Polynomial form = h.QuadraticForm();
  const bool homogeneous = p.is_homogeneous();
  std::string tried;
  for (const Candidate& c : candidates) {
    if (c.sigma.num_vars() != n) {
      throw std::invalid_argument("multiplier must be over the x variables");
    }
    Polynomial sigma = Embed(c.sigma, 2 * n, 0);
    const bool hom = homogeneous && c.sigma.is_homogeneous();
    MonomialBasis basis = YLinearBasis(n, n, c.sigma.degree() + d - 2, hom);
    SosStatus s = IsSosOver(form, basis, sigma, options.sos);
    if (s.certified_sos()) {
      out.kind = ConvexityStatus::Kind::kConvexNumeric;
      out.multiplier = sigma;
      out.multiplier_power = c.power;
      out.detail = std::move(s);
      out.note =
          "certifies sigma(x) * y'H(x)y >= 0; convexity follows because sigma "
          "is positive off a measure-zero set and the Hessian form is "
          "continuous";
      return out;
    }
    if (!tried.empty()) tried += "; ";
    tried += ToString(s.kind);
    out.detail = std::move(s);
  }
  out.kind = ConvexityStatus::Kind::kInconclusive;
  out.note = "no tried multiplier gave a certificate (" + tried + ")";
  return out;
}

std::vector<std::pair<std::vector<int>, SosStatus>> PrincipalMinorsSos(
    const PolyMatrix& u, const SosOptions& options) {
  const int n = u.dim();
  std::vector<std::pair<std::vector<int>, SosStatus>> out;
  for (int size = 1; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i) {
        if (pick[i]) idx.push_back(i);
      }
      Polynomial minor = Determinant(u.Principal(idx));
      out.emplace_back(idx, IsSos(minor, options));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

Classification Classify(int n, int d, bool homogeneous) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (d < 2 || d % 2 != 0) {
    throw std::invalid_argument("degree must be even and at least 2");
  }
  bool equal;
  if (homogeneous) {
    equal = n <= 2 || d == 2 || (n == 3 && d == 4);
  } else {
    equal = n == 1 || d == 2 || (n == 2 && d == 4);
  }
  return {equal, equal};
}

}  // namespace sosconvex
