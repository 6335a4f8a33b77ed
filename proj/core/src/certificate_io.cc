#include "sosconvex/certificate_io.h"

#include <sstream>

#include "json.hpp"

namespace sosconvex {
namespace {

using Json = nlohmann::ordered_json;

Json PolynomialJson(const Polynomial& p) {
  Json terms = Json::array();
  std::istringstream in(Serialize(p));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (!line.empty()) terms.push_back(line);
  }
  return Json{{"nvars", p.num_vars()}, {"terms", terms}};
}

Polynomial PolynomialFromJson(const Json& j) {
  std::string text = "polynomial nvars=" +
                     std::to_string(j.at("nvars").get<int>()) + "\n";
  for (const auto& t : j.at("terms")) text += t.get<std::string>() + "\n";
  return DeserializePolynomial(text);
}

Json BasisJson(const MonomialBasis& b) {
  Json out = Json::array();
  for (const Monomial& m : b.monomials()) out.push_back(m.exponents());
  return out;
}

MonomialBasis BasisFromJson(const Json& j, int num_vars) {
  std::vector<Monomial> monomials;
  for (const auto& e : j) {
    auto exps = e.get<std::vector<int>>();
    if (static_cast<int>(exps.size()) != num_vars) {
      throw ParseError("basis monomial has the wrong number of exponents");
    }
    for (int v : exps) {
      if (v < 0) throw ParseError("negative exponent in basis");
    }
    monomials.emplace_back(std::move(exps));
  }
  try {
    return MonomialBasis(num_vars, std::move(monomials));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Scalar ScalarFromJson(const Json& j) {
  try {
    return ParseScalar(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::string WriteCertificate(const CertificateFile& file) {
  if (file.gram.has_value() == file.separation.has_value()) {
    throw std::invalid_argument("certificate file needs exactly one certificate");
  }
  Json j;
  j["kind"] = file.gram ? "gram" : "separation";
  j["variables"] = file.variables;
  j["polynomial"] = PolynomialJson(file.polynomial);
  if (file.gram) {
    const GramCertificate& g = *file.gram;
    j["basis"] = BasisJson(g.basis);
    j["scale"] = ToFractionString(g.scale);
    j["multiplier"] = PolynomialJson(g.multiplier);
    Json q = Json::array();
    for (int i = 0; i < g.gram.rows(); ++i) {
      Json row = Json::array();
      for (int k = 0; k < g.gram.cols(); ++k) {
        row.push_back(ToFractionString(g.gram(i, k)));
      }
      q.push_back(row);
    }
    j["Q"] = q;
  } else {
    const SeparationCertificate& s = *file.separation;
    j["ordering"] = BasisJson(s.ordering);
    j["moment_basis"] = BasisJson(s.moment_basis);
    Json c = Json::array();
    for (const Scalar& v : s.dual) c.push_back(ToFractionString(v));
    j["c"] = c;
  }
  return j.dump(1) + "\n";
}

CertificateFile ReadCertificate(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    CertificateFile file;
    file.polynomial = PolynomialFromJson(j.at("polynomial"));
    const int n = file.polynomial.num_vars();
    if (j.contains("variables")) {
      file.variables = j.at("variables").get<std::vector<std::string>>();
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gram") {
      MonomialBasis basis = BasisFromJson(j.at("basis"), n);
      const Json& q = j.at("Q");
      const int size = basis.size();
      if (static_cast<int>(q.size()) != size) {
        throw ParseError("Gram matrix size does not match the basis");
      }
      RationalMatrix gram(size, size);
      for (int i = 0; i < size; ++i) {
        if (static_cast<int>(q[i].size()) != size) {
          throw ParseError("Gram matrix is not square");
        }
        for (int k = 0; k < size; ++k) gram(i, k) = ScalarFromJson(q[i][k]);
      }
      Polynomial multiplier = j.contains("multiplier")
                                  ? PolynomialFromJson(j.at("multiplier"))
                                  : Polynomial::Constant(n, Scalar(1));
      if (multiplier.num_vars() != n) {
        throw ParseError("multiplier has the wrong number of variables");
      }
      Scalar scale = j.contains("scale") ? ScalarFromJson(j.at("scale"))
                                         : Scalar(1);
      file.gram = GramCertificate(std::move(basis), std::move(gram),
                                  std::move(multiplier), scale);
    } else if (kind == "separation") {
      SeparationCertificate s;
      s.ordering = BasisFromJson(j.at("ordering"), n);
      s.moment_basis = BasisFromJson(j.at("moment_basis"), n);
      for (const auto& v : j.at("c")) s.dual.push_back(ScalarFromJson(v));
      if (static_cast<int>(s.dual.size()) != s.ordering.size()) {
        throw ParseError("functional length does not match the ordering");
      }
      file.separation = std::move(s);
    } else {
      throw ParseError("unknown certificate kind '" + kind + "'");
    }
    return file;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

VerificationReport VerifyCertificateFile(const CertificateFile& file) {
  if (file.gram) return VerifyGram(file.polynomial, *file.gram);
  if (file.separation) {
    // A functional that does not cover the target is not a certificate.
    for (const auto& [m, c] : file.polynomial.terms()) {
      if (file.separation->ordering.IndexOf(m) < 0) {
        VerificationReport r;
        r.failure = VerificationReport::Failure::kIdentity;
        r.mismatch = m;
        r.message = "target monomial missing from the functional's ordering";
        return r;
      }
    }
    return VerifySeparation(file.polynomial, *file.separation);
  }
  throw std::invalid_argument("certificate file carries no certificate");
}

}  // namespace sosconvex
