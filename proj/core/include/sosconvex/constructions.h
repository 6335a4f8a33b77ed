#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sosconvex/poly_matrix.h"
#include "sosconvex/polynomial.h"
#include "sosconvex/sos_analysis.h"

namespace sosconvex {

struct CatalogEntry {
  std::string name;
  std::string description;
  /// Exactly one of these is set.
  std::optional<Polynomial> polynomial;
  std::optional<PolyMatrix> matrix;
  /// Memberships the entry is known for, e.g. "C(3,6) minus SigmaC(3,6)".
  std::vector<std::string> claims;
};

/// Names in catalog order.
std::vector<std::string> CatalogNames();

/// Throws std::out_of_range for an unknown name.
CatalogEntry Catalog(const std::string& name);

/// x1^(d-6)·(x1⁴x2² + x1²x2⁴ - 3x1²x2²x3² + x3⁶) + α(x1² + x2² + x3²)^(d/2).
Polynomial MotzkinFamily(int d, const Scalar& alpha);

struct AlphaSearch {
  Scalar alpha;
  SosStatus status;
  /// Smallest sampled value of the form on the unit sphere.
  double sphere_min = 0;
  int halvings = 0;
};

struct AlphaOptions {
  SosOptions sos;
  /// Give up below 2^-max_halvings.
  int max_halvings = 30;
  int sphere_samples = 20000;
  std::uint64_t seed = 20240601;
};

/// Halves α from 1 until MotzkinFamily(d, α) has an exact certificate of
/// not being sos. Returns nullopt when the floor is reached first.
std::optional<AlphaSearch> FindAlpha(int d, const AlphaOptions& options = {});

struct ConstructionRecipe {
  Polynomial m;      // ternary seed form
  Polynomial g;      // padding form in x2, x3 (as a ternary polynomial)
  Scalar gamma;
  Polynomial f;      // ∫₀^{x1}∫₀^s m(t, x2, x3) dt ds + γ g
};

/// (x2² + x3²)^((d+2)/2) as a ternary polynomial.
Polynomial DefaultPadding(int d);

/// `g` may be given over (x2, x3) or over (x1, x2, x3) without x1.
ConstructionRecipe BuildThm58(const Polynomial& m, const Polynomial& g,
                              const Scalar& gamma);

struct GammaEstimate {
  Scalar gamma;
  /// Smallest sampled yᵀH_m̂(x)y on the bi-sphere.
  double beta1 = 0;
  /// Smallest sampled yᵀH_g(x)y over points where the first form is
  /// negative.
  double beta2 = 0;
  /// Largest sampled ratio -yᵀH_m̂y / yᵀH_gy.
  double ratio = 0;
  int samples = 0;
};

struct GammaOptions {
  int samples = 100000;
  std::uint64_t seed = 20240601;
  double safety_factor = 2.0;
  int polish_points = 32;
  int polish_steps = 200;
};

/// Estimates the weight γ that makes ∫∫m + γ g convex by sampling the
/// bi-sphere. Throws std::invalid_argument when g's Hessian form is not
/// positive wherever the integrated seed's is negative.
GammaEstimate FindGamma(const Polynomial& m, const Polynomial& g,
                        const GammaOptions& options = {});

/// p(x1..xn) + x_{n+1}^d.
Polynomial ExtendVariables(const Polynomial& p, int d);

/// f(x1, x2, 1).
Polynomial DehomogenizeConstruction(const ConstructionRecipe& recipe);

struct CoverageRoute {
  bool equal_case = false;
  /// Catalog name of the base example, or "thm58" / "thm58-dehomogenized".
  std::string base;
  int extensions = 0;
  /// Degree of the seed form for the "thm58" routes.
  int seed_degree = 0;
  std::string description;
};

/// Which construction yields a convex but not sos-convex example for (n, d).
CoverageRoute CoveragePlan(int n, int d, bool homogeneous);

}  // namespace sosconvex
