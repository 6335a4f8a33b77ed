#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sosconvex/certificates.h"
#include "sosconvex/convexity_forms.h"
#include "sosconvex/poly_matrix.h"
#include "sosconvex/sos_search.h"

namespace sosconvex {

struct SosOptions {
  SosSearchOptions search;
  int max_bits = 64;
  /// Try to restate separations found over a pruned basis over the full
  /// standard basis.
  bool extend_separation = true;
  /// Rescale variables by powers of two to even out coefficient magnitudes
  /// before the numeric search; certificates are mapped back exactly.
  bool equilibrate = true;
};

struct SosStatus {
  enum class Kind { kCertifiedSos, kCertifiedNotSos, kInconclusive };

  Kind kind = Kind::kInconclusive;
  /// The polynomial the certificate speaks about (multiplier · p, or the
  /// transformed witness for convexity checks).
  Polynomial target;
  std::optional<GramCertificate> gram;
  std::optional<SeparationCertificate> separation;
  /// Basis the search started from.
  MonomialBasis search_basis;
  double margin = 0;
  std::string diagnostic;

  bool certified_sos() const { return kind == Kind::kCertifiedSos; }
  bool certified_not_sos() const { return kind == Kind::kCertifiedNotSos; }
};

std::string ToString(SosStatus::Kind k);

/// Decides whether multiplier · p is sos over `basis` and certifies the
/// answer exactly when possible.
SosStatus IsSosOver(const Polynomial& p, const MonomialBasis& basis,
                    const Polynomial& multiplier, const SosOptions& options = {});

SosStatus IsSos(const Polynomial& p, const SosOptions& options = {});

/// Basis used for yᵀU(x)y: x-monomials times single y variables.
MonomialBasis SosMatrixBasis(const PolyMatrix& u);

SosStatus IsSosMatrix(const PolyMatrix& u, const SosOptions& options = {});

struct ConvexityStatus {
  enum class Kind { kSosConvex, kNotSosConvex, kConvexNumeric, kInconclusive };

  Kind kind = Kind::kInconclusive;
  WitnessKind witness;
  SosStatus detail;
  /// σ for kConvexNumeric (in the variables of detail.target).
  std::optional<Polynomial> multiplier;
  int multiplier_power = 0;
  /// Caveats that qualify the verdict, e.g. what a multiplier certificate
  /// does and does not prove.
  std::string note;
};

std::string ToString(ConvexityStatus::Kind k);

/// Builds the chosen witness and checks it for sos. First-order and midpoint
/// witnesses are rewritten with y = x + u before the search; the certificate
/// then refers to that rewritten polynomial.
ConvexityStatus IsSosConvex(const Polynomial& p,
                            WitnessKind kind = WitnessKind::SecondOrder(),
                            const SosOptions& options = {});

/// σ(x) · yᵀH(x)y as a polynomial in (x, y).
Polynomial MultipliedHessianForm(const Polynomial& p, const Polynomial& sigma);

struct MultiplierOptions {
  SosOptions sos;
  /// When non-empty, only these multipliers (polynomials in the x variables)
  /// are tried, in order.
  std::vector<Polynomial> candidates;
};

/// Tries σ · yᵀH(x)y sos for σ = 1 and then σ = (Σ_{i∈S} x_i²)^r for
/// r = 1..max_r and supports S of increasing size.
ConvexityStatus CheckConvexityMultiplier(const Polynomial& p, int max_r,
                                         const MultiplierOptions& options = {});

/// Sos status of every principal minor, index sets ordered by size and then
/// lexicographically.
std::vector<std::pair<std::vector<int>, SosStatus>> PrincipalMinorsSos(
    const PolyMatrix& u, const SosOptions& options = {});

struct Classification {
  bool psd_equals_sos = false;
  bool convex_equals_sos_convex = false;
};

/// Whether nonnegativity coincides with sos and convexity with sos-convexity
/// for polynomials (homogeneous = false) or forms in n variables of degree d.
Classification Classify(int n, int d, bool homogeneous);

}  // namespace sosconvex
