#include "sosconvex/constructions.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "sosconvex/poly_io.h"

namespace sosconvex {
namespace {

// Polynomial with double coefficients for fast sampling.
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const Polynomial& p) {
    for (const auto& [m, c] : p.terms()) {
      terms_.push_back({m.exponents(), c.get_d()});
    }
  }
  double operator()(const double* x) const {
    double s = 0;
    for (const auto& t : terms_) {
      double v = t.coeff;
      for (std::size_t i = 0; i < t.exps.size(); ++i) {
        for (int e = 0; e < t.exps[i]; ++e) v *= x[i];
      }
      s += v;
    }
    return s;
  }

 private:
  struct Term {
    std::vector<int> exps;
    double coeff;
  };
  std::vector<Term> terms_;
};

// yᵀH(x)y evaluated numerically for a 3x3 Hessian.
class HessianForm {
 public:
  explicit HessianForm(const Polynomial& p) : n_(p.num_vars()) {
    PolyMatrix h = Hessian(p);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) entries_.emplace_back(h(i, j));
    }
  }
  double operator()(const double* x, const double* y) const {
    double s = 0;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) s += y[i] * y[j] * entries_[i * n_ + j](x);
    }
    return s;
  }

 private:
  int n_;
  std::vector<NumericPolynomial> entries_;
};

double RadicalInverse(std::uint64_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Low-discrepancy points mapped to normal deviates, randomly shifted.
class HaltonNormals {
 public:
  HaltonNormals(int dim, std::uint64_t seed) : dim_(dim) {
    static const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (dim > 12) throw std::invalid_argument("too many Halton dimensions");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < dim; ++k) {
      bases_.push_back(kPrimes[k]);
      shifts_.push_back(u(rng));
    }
  }
  // Fills `out` with `dim` standard normal deviates.
  void Next(double* out) {
    ++index_;
    for (int k = 0; k < dim_; k += 2) {
      double u1 = std::fmod(RadicalInverse(index_, bases_[k]) + shifts_[k], 1.0);
      double u2 = k + 1 < dim_
                      ? std::fmod(RadicalInverse(index_, bases_[k + 1]) +
                                      shifts_[k + 1],
                                  1.0)
                      : 0.25;
      u1 = std::max(u1, 1e-300);
      const double r = std::sqrt(-2.0 * std::log(u1));
      out[k] = r * std::cos(2 * M_PI * u2);
      if (k + 1 < dim_) out[k + 1] = r * std::sin(2 * M_PI * u2);
    }
  }

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<int> bases_;
  std::vector<double> shifts_;
};

void Normalize(double* v, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += v[i] * v[i];
  s = std::sqrt(s);
  if (s == 0) {
    v[0] = 1;
    return;
  }
  for (int i = 0; i < n; ++i) v[i] /= s;
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

// Smallest dyadic with four significant bits that is >= v > 0.
Scalar DyadicCeil(double v) {
  const int e = static_cast<int>(std::floor(std::log2(v))) - 3;
  const double units = std::ceil(std::ldexp(v, -e));
  return Scalar(mpz_class(static_cast<unsigned long>(units))) * Pow2(e);
}

Polynomial Parse(const std::string& text, int num_vars) {
  return ParseInfix(text, StandardVariableNames(num_vars));
}

const char kMotzkin[] = "x1^4x2^2 + x1^2x2^4 - 3x1^2x2^2x3^2 + x3^6";

const char kRobinson[] =
    "x1^2(x1-x4)^2 + x2^2(x2-x4)^2 + x3^2(x3-x4)^2 "
    "+ 2x1x2x3(x1+x2+x3-2x4)";

const char kP38[] =
    "32x1^8+118x1^6x2^2+40x1^6x3^2+25x1^4x2^4-43x1^4x2^2x3^2-35x1^4x3^4"
    "+3x1^2x2^4x3^2-16x1^2x2^2x3^4+24x1^2x3^6+16x2^8+44x2^6x3^2+70x2^4x3^4"
    "+60x2^2x3^6+30x3^8";

const char kQ64[] =
    "x1^4+x2^4+x3^4+x4^4+x5^4+x6^4"
    " + 2(x1^2x2^2+x1^2x3^2+x2^2x3^2+x4^2x5^2+x4^2x6^2+x5^2x6^2)"
    " + 1/2(x1^2x4^2+x2^2x5^2+x3^2x6^2) + x1^2x6^2+x2^2x4^2+x3^2x5^2"
    " - (x1x2x4x5+x1x3x4x6+x2x3x5x6)";

const char kF36[] =
    "77x1^6-155x1^5x2+445x1^4x2^2+76x1^3x2^3+556x1^2x2^4+68x1x2^5+240x2^6"
    "-9x1^5x3-1129x1^3x2^2x3+62x1^2x2^3x3+1206x1x2^4x3-343x2^5x3"
    "+363x1^4x3^2+773x1^3x2x3^2+891x1^2x2^2x3^2-869x1x2^3x3^2+1043x2^4x3^2"
    "-14x1^3x3^3-1108x1^2x2x3^3-216x1x2^2x3^3-839x2^3x3^3+721x1^2x3^4"
    "+436x1x2x3^4+378x2^2x3^4+48x1x3^5-97x2x3^5+89x3^6";

const char kH44[] =
    "1671x1^4-4134x1^3x2-3332x1^3x3+5104x1^2x2^2+4989x1^2x2x3+3490x1^2x3^2"
    "-2203x1x2^3-3030x1x2^2x3-3776x1x2x3^2-1522x1x3^3+1227x2^4-595x2^3x3"
    "+1859x2^2x3^2+1146x2x3^3+979x3^4+1195728x4^4-1932x1x4^3-2296x2x4^3"
    "-3144x3x4^3+1465x1^2x4^2-1376x1^3x4-263x1x2x4^2+2790x1^2x2x4"
    "+2121x2^2x4^2-292x1x2^2x4-1224x2^3x4+2404x1x3x4^2+2727x2x3x4^2"
    "-2852x1x3^2x4-388x2x3^2x4-1520x3^3x4+2943x1^2x3x4-5053x1x2x3x4"
    "+2552x2^2x3x4+3512x3^2x4^2";

Polynomial F26() {
  Polynomial f = Parse(kF36, 3);
  std::vector<Polynomial> sub = {
      Polynomial::Variable(2, 0), Polynomial::Variable(2, 1),
      Polynomial::Constant(2, Scalar(1)) -
          Scalar(1, 2) * Polynomial::Variable(2, 1)};
  return Substitute(f, sub);
}

PolyMatrix Choi() {
  auto e = [](const char* text) { return Parse(text, 3); };
  return PolyMatrix(3, {e("x1^2+2x2^2"), e("-x1x2"), e("-x1x3"),
                        e("-x1x2"), e("x2^2+2x3^2"), e("-x2x3"),
                        e("-x1x3"), e("-x2x3"), e("x3^2+2x1^2")});
}

}  // namespace

std::vector<std::string> CatalogNames() {
  return {"motzkin", "robinson", "p38", "q64", "f36",
          "f26",     "h44",      "h34", "choi"};
}

CatalogEntry Catalog(const std::string& name) {
  CatalogEntry e;
  e.name = name;
  if (name == "motzkin") {
    e.description = "Motzkin form";
    e.polynomial = Parse(kMotzkin, 3);
    e.claims = {"P(3,6) minus Sigma(3,6)"};
  } else if (name == "robinson") {
    e.description = "Robinson form";
    e.polynomial = Parse(kRobinson, 4);
    e.claims = {"P(4,4) minus Sigma(4,4)"};
  } else if (name == "p38") {
    e.description = "ternary octic form, convex but not sos-convex";
    e.polynomial = Parse(kP38, 3);
    e.claims = {"C(3,8) minus SigmaC(3,8)"};
  } else if (name == "q64") {
    e.description = "quartic form in six variables derived from Choi's biquadratic form";
    e.polynomial = Parse(kQ64, 6);
    e.claims = {"C(6,4) minus SigmaC(6,4)"};
  } else if (name == "f36") {
    e.description = "ternary sextic form, convex but not sos-convex";
    e.polynomial = Parse(kF36, 3);
    e.claims = {"C(3,6) minus SigmaC(3,6)"};
  } else if (name == "f26") {
    e.description = "f36 restricted to x3 = 1 - x2/2";
    e.polynomial = F26();
    e.claims = {"C~(2,6) minus SigmaC~(2,6)"};
  } else if (name == "h44") {
    e.description = "quartic form in four variables, convex but not sos-convex";
    e.polynomial = Parse(kH44, 4);
    e.claims = {"C(4,4) minus SigmaC(4,4)"};
  } else if (name == "h34") {
    e.description = "h44 dehomogenized at x4 = 1";
    e.polynomial = Dehomogenize(Parse(kH44, 4), 3, Scalar(1));
    e.claims = {"C~(3,4) minus SigmaC~(3,4)"};
  } else if (name == "choi") {
    e.description = "Choi matrix: psd but not an sos-matrix";
    e.matrix = Choi();
    e.claims = {"psd matrix, not an sos-matrix"};
  } else {
    throw std::out_of_range("unknown catalog entry '" + name + "'");
  }
  return e;
}

Polynomial MotzkinFamily(int d, const Scalar& alpha) {
  if (d < 6 || d % 2 != 0) {
    throw std::invalid_argument("motzkin family needs even d >= 6");
  }
  if (alpha < 0) throw std::invalid_argument("alpha must be positive");
  Polynomial m = Parse(kMotzkin, 3);
  Polynomial x1 = Polynomial::Variable(3, 0);
  Polynomial sphere = Parse("x1^2+x2^2+x3^2", 3);
  return Pow(x1, d - 6) * m + alpha * Pow(sphere, d / 2);
}

std::optional<AlphaSearch> FindAlpha(int d, const AlphaOptions& options) {
  if (d < 6 || d % 2 != 0) {
    throw std::invalid_argument("find_alpha needs even d >= 6");
  }
  Scalar alpha = 1;
  for (int k = 0; k <= options.max_halvings; ++k) {
    Polynomial m = MotzkinFamily(d, alpha);
    SosStatus s = IsSos(m, options.sos);
    if (s.certified_not_sos()) {
      AlphaSearch out;
      out.alpha = alpha;
      out.status = std::move(s);
      out.halvings = k;
      NumericPolynomial num(m);
      HaltonNormals gen(3, options.seed);
      double best = std::numeric_limits<double>::infinity();
      double pt[3];
      for (int i = 0; i < options.sphere_samples; ++i) {
        gen.Next(pt);
        Normalize(pt, 3);
        best = std::min(best, num(pt));
      }
      out.sphere_min = best;
      return out;
    }
    alpha /= 2;
  }
  return std::nullopt;
}

Polynomial DefaultPadding(int d) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("padding needs even d");
  return Pow(Parse("x2^2+x3^2", 3), (d + 2) / 2);
}

ConstructionRecipe BuildThm58(const Polynomial& m, const Polynomial& g,
                              const Scalar& gamma) {
  if (m.num_vars() != 3) throw std::invalid_argument("seed must be ternary");
  if (!m.is_zero() && (!m.is_homogeneous() || m.degree() < 6 ||
                       m.degree() % 2 != 0)) {
    throw std::invalid_argument("seed must be a form of even degree >= 6");
  }
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
  Polynomial g3 = g;
  if (g.num_vars() == 2) {
    g3 = Embed(g, 3, 1);
  } else if (g.num_vars() != 3 || !Differentiate(g, 0).is_zero()) {
    throw std::invalid_argument("padding must depend on x2, x3 only");
  }
  if (!g3.is_homogeneous()) throw std::invalid_argument("padding must be a form");
  if (!m.is_zero() && g3.degree() != m.degree() + 2) {
    throw std::invalid_argument("padding degree must be deg(m) + 2");
  }
  ConstructionRecipe r;
  r.m = m;
  r.g = g3;
  r.gamma = gamma;
  r.f = IntegrateFirstVariableTwice(m) + gamma * g3;
  return r;
}

GammaEstimate FindGamma(const Polynomial& m, const Polynomial& g,
                        const GammaOptions& options) {
  ConstructionRecipe shape = BuildThm58(m, g, Scalar(1));
  HessianForm a_form(IntegrateFirstVariableTwice(m));
  HessianForm b_form(shape.g);
  GammaEstimate est;
  est.samples = options.samples;
  est.beta1 = std::numeric_limits<double>::infinity();
  est.beta2 = std::numeric_limits<double>::infinity();

  struct Point {
    double ratio;
    double v[6];
  };
  std::vector<Point> worst;
  auto consider = [&](const double* v, bool record) {
    const double a = a_form(v, v + 3);
    est.beta1 = std::min(est.beta1, a);
    if (a >= 0) return -1.0;
    const double b = b_form(v, v + 3);
    est.beta2 = std::min(est.beta2, b);
    if (b <= 0) {
      throw std::invalid_argument(
          "padding Hessian form is not positive where the seed's is negative");
    }
    const double ratio = -a / b;
    est.ratio = std::max(est.ratio, ratio);
    if (record) {
      Point p;
      p.ratio = ratio;
      std::copy(v, v + 6, p.v);
      worst.push_back(p);
    }
    return ratio;
  };

  HaltonNormals gen(6, options.seed);
  double v[6];
  for (int i = 0; i < options.samples; ++i) {
    gen.Next(v);
    Normalize(v, 3);
    Normalize(v + 3, 3);
    consider(v, true);
    if (static_cast<int>(worst.size()) > 4 * options.polish_points) {
      std::sort(worst.begin(), worst.end(),
                [](const Point& a, const Point& b) { return a.ratio > b.ratio; });
      worst.resize(options.polish_points);
    }
  }
  std::sort(worst.begin(), worst.end(),
            [](const Point& a, const Point& b) { return a.ratio > b.ratio; });
  if (static_cast<int>(worst.size()) > options.polish_points) {
    worst.resize(options.polish_points);
  }

  // Local polishing: accept random perturbations that raise the ratio.
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Point& p : worst) {
    double step = 0.05;
    for (int s = 0; s < options.polish_steps; ++s) {
      double trial[6];
      for (int k = 0; k < 6; ++k) trial[k] = p.v[k] + step * normal(rng);
      Normalize(trial, 3);
      Normalize(trial + 3, 3);
      const double r = consider(trial, false);
      if (r > p.ratio) {
        p.ratio = r;
        std::copy(trial, trial + 6, p.v);
      } else {
        step *= 0.97;
      }
    }
  }
  if (!std::isfinite(est.beta2)) est.beta2 = 0;
  est.gamma = est.ratio > 0 ? DyadicCeil(options.safety_factor * est.ratio)
                            : Scalar(1);
  return est;
}

Polynomial ExtendVariables(const Polynomial& p, int d) {
  if (d % 2 != 0) throw std::invalid_argument("extension degree must be even");
  if (p.degree() != d) {
    throw std::invalid_argument("extension degree must equal deg(p)");
  }
  const int n = p.num_vars();
  return Embed(p, n + 1, 0) + Pow(Polynomial::Variable(n + 1, n), d);
}

Polynomial DehomogenizeConstruction(const ConstructionRecipe& recipe) {
  return Dehomogenize(recipe.f, 2, Scalar(1));
}

CoverageRoute CoveragePlan(int n, int d, bool homogeneous) {
  Classification c = Classify(n, d, homogeneous);
  CoverageRoute r;
  if (c.convex_equals_sos_convex) {
    r.equal_case = true;
    r.description = "convexity and sos-convexity coincide";
    return r;
  }
  if (homogeneous) {
    if (d == 4) {
      r.base = "h44";
      r.extensions = n - 4;
    } else if (d == 6) {
      r.base = "f36";
      r.extensions = n - 3;
    } else {
      r.base = "thm58";
      r.seed_degree = d - 2;
      r.extensions = n - 3;
    }
  } else {
    if (d == 4) {
      r.base = "h34";
      r.extensions = n - 3;
    } else if (d == 6) {
      r.base = "f26";
      r.extensions = n - 2;
    } else {
      r.base = "thm58-dehomogenized";
      r.seed_degree = d - 2;
      r.extensions = n - 2;
    }
  }
  r.description = r.base + " followed by " + std::to_string(r.extensions) +
                  " variable extension(s)";
  return r;
}

}  // namespace sosconvex
