#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sosconvex {

/// Exact coefficient field. GMP keeps every arithmetic result in lowest
/// terms with a positive denominator.
using Scalar = mpq_class;

/// Parses "p", "-p", or "p/q" (q != 0) into a canonical rational.
/// Throws std::invalid_argument on malformed text.
Scalar ParseScalar(std::string_view text);

/// Always "num/den", including "/1" for integers, so serialized files are
/// byte-stable.
std::string ToFractionString(const Scalar& value);

/// Shortest human form: "3", "-1/2".
std::string ToDisplayString(const Scalar& value);

/// Exact rational equal to the given double (every finite double is dyadic).
Scalar FromDouble(double value);

/// Nearest multiple of 2^-bits.
Scalar RoundToDyadic(double value, int bits);

int Sign(const Scalar& value);

}  // namespace sosconvex
