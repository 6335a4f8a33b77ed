#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "sosconvex/certificates.h"
#include "sosconvex/sdp.h"

namespace sosconvex {

/// Result of removing basis monomials that cannot occur in any Gram
/// representation of a target.
struct PrunedBasis {
  MonomialBasis basis;
  /// Monomials removed, in the order they were removed.
  std::vector<Monomial> removed;
  /// Round in which each removed monomial was dropped (same order).
  std::vector<int> removal_round;
  /// Set when some z_i² is produced only by the (i, i) entry yet has a
  /// negative target coefficient: the target cannot be sos over the basis.
  std::optional<Monomial> negative_square;
};

/// Repeatedly drops z_i when the target coefficient of z_i² is zero and no
/// other pair of remaining basis monomials produces z_i².
PrunedBasis PruneBasis(const Polynomial& target, const MonomialBasis& basis);

struct SosSearchOptions {
  SdpOptions sdp;
  /// Minimum eigenvalue margin (relative to the largest target coefficient)
  /// needed to call the result a Gram matrix or a separating ray. Every
  /// candidate is verified exactly afterwards, so the default only rules out
  /// a margin of exactly zero.
  double margin_tolerance = 0;
  /// Skip PruneBasis when false.
  bool prune = true;
};

struct SosSearchResult {
  enum class Kind { kNumericGram, kDualRay, kFailed };

  Kind kind = Kind::kFailed;
  /// Basis actually used (after pruning) and the pruning record.
  MonomialBasis basis;
  PrunedBasis pruning;
  /// The target multiplier·p.
  Polynomial target;
  /// target ≈ zᵀGz in the target's own scale, for the best G found. Set
  /// whenever the solver converged, so a near-zero margin of either sign
  /// still leaves a candidate for rounding.
  Eigen::MatrixXd gram;
  /// kDualRay: functional over `ordering` whose moment matrix over `basis`
  /// is ≈ PSD with unit trace, and whose pairing with target/scale is
  /// `margin` < 0. kNumericGram: the solver's dual functional, normalized
  /// the same way, when its trace is positive.
  std::vector<double> functional;
  MonomialBasis ordering;
  /// Best λ_min of a Gram matrix for target/scale, where scale is the
  /// largest absolute target coefficient.
  double margin = 0;
  double scale = 1;
  /// Exact separation found during pruning, if any.
  std::optional<SeparationCertificate> exact_separation;
  SdpStatus sdp_status = SdpStatus::kMaxIterations;
  int iterations = 0;
  std::string diagnostic;
};

/// Searches for a Gram matrix of multiplier·p over `basis` by maximizing the
/// smallest eigenvalue of the Gram matrix. Throws std::invalid_argument when
/// some target monomial is not a product of two basis monomials.
SosSearchResult SosGramSearch(const Polynomial& p, const MonomialBasis& basis,
                              const Polynomial& multiplier,
                              const SosSearchOptions& options = {});

/// Rounds a numeric Gram matrix to dyadic rationals with 2^-k spacing for
/// k = 8, 16, ..., max_bits, projects exactly onto the coefficient-matching
/// space and returns the first candidate whose Gram matrix is exactly PSD.
/// When every candidate fails and the numeric matrix is rank deficient, the
/// same is tried on the face Q = BᵀRB, with B an exact rational basis of the
/// numeric range. `moments`, a dual functional over ProductSupport(basis)
/// such as SosSearchResult::functional, sharpens the face when given.
std::optional<GramCertificate> RoundToRational(
    const Eigen::MatrixXd& gram, const Polynomial& p,
    const MonomialBasis& basis, const Polynomial& multiplier,
    int max_bits = 64, const std::vector<double>& moments = {});

/// Turns an approximate dual ray into an exact separation certificate for
/// `target`, or nullopt when every rationalization fails the exact checks.
std::optional<SeparationCertificate> DualRayToSeparation(
    const std::vector<double>& ray, const MonomialBasis& ordering,
    const MonomialBasis& moment_basis, const Polynomial& target);

/// Re-expresses a separation over a pruned basis as one over `full_basis`
/// by assigning large moments to the squares of removed monomials. Returns
/// nullopt if no tried assignment verifies.
std::optional<SeparationCertificate> ExtendSeparation(
    const SeparationCertificate& cert, const PrunedBasis& pruned,
    const MonomialBasis& full_basis, const Polynomial& target);

/// Moments of the standard Gaussian: E[x^α] = Π (α_i - 1)!! when every α_i
/// is even, else 0.
Scalar GaussianMoment(const Monomial& m);

}  // namespace sosconvex
