#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sosconvex/certificates.h"
#include "sosconvex/poly_io.h"

namespace sosconvex {

/// A certificate together with the polynomial it speaks about, as stored on
/// disk. Exactly one of `gram` and `separation` is set.
struct CertificateFile {
  Polynomial polynomial;
  std::vector<std::string> variables;
  std::optional<GramCertificate> gram;
  std::optional<SeparationCertificate> separation;
};

/// JSON text with every rational written as an exact "p/q" string.
std::string WriteCertificate(const CertificateFile& file);

/// Throws ParseError on malformed input.
CertificateFile ReadCertificate(std::string_view text);

/// Exact check of whichever certificate the file carries.
VerificationReport VerifyCertificateFile(const CertificateFile& file);

}  // namespace sosconvex
