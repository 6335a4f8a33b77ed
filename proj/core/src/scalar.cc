#include "sosconvex/scalar.h"

#include <cmath>
#include <stdexcept>

namespace sosconvex {
namespace {

bool IsIntegerText(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

}  // namespace

Scalar ParseScalar(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!IsIntegerText(num) || !IsIntegerText(den) || den[0] == '-' ||
      den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                "'");
  }
  if (num[0] == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw std::invalid_argument("zero denominator: '" + std::string(text) +
                                "'");
  }
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string ToFractionString(const Scalar& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string ToDisplayString(const Scalar& value) { return value.get_str(); }

Scalar FromDouble(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite double has no rational value");
  }
  return Scalar(value);
}

Scalar RoundToDyadic(double value, int bits) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite double has no rational value");
  }
  const double scaled = std::ldexp(value, bits);
  mpz_class num(std::nearbyint(scaled));
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned>(bits));
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

int Sign(const Scalar& value) { return sgn(value); }

}  // namespace sosconvex
