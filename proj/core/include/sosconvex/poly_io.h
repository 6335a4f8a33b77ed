#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sosconvex/poly_matrix.h"
#include "sosconvex/polynomial.h"

namespace sosconvex {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Names for x1..x{num_x} followed by y1..y{num_y}.
std::vector<std::string> StandardVariableNames(int num_x, int num_y = 0);

/// Canonical form: a "polynomial nvars=N" header, then one
/// "(e1,...,eN) num/den" line per term in graded-lex order.
std::string Serialize(const Polynomial& p);
std::string Serialize(const PolyMatrix& m);

Polynomial DeserializePolynomial(std::string_view text);
PolyMatrix DeserializePolyMatrix(std::string_view text);

/// Infix text such as "x1^4*x2^2 + 3/2 x1 x3 - (x2 - x3)^2". Juxtaposition
/// multiplies. Variables are looked up in `names`.
Polynomial ParseInfix(std::string_view text,
                      const std::vector<std::string>& names);

/// Infix text with x1..xn / y1..ym naming; n and m are inferred from the
/// largest indices present unless `min_x` / `min_y` ask for more.
Polynomial ParseInfix(std::string_view text, int min_x = 0, int min_y = 0);

/// Accepts either the canonical serialization or infix text.
Polynomial ParsePolynomial(std::string_view text);

/// Readable infix rendering, e.g. "x1^4*x2^2 - 3*x1^2*x2^2*x3^2".
std::string ToInfix(const Polynomial& p,
                    const std::vector<std::string>& names = {});

}  // namespace sosconvex
