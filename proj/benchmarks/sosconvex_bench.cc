#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sosconvex/certificate_io.h"
#include "sosconvex/certificates.h"
#include "sosconvex/constructions.h"
#include "sosconvex/convexity_forms.h"
#include "sosconvex/poly_io.h"
#include "sosconvex/sos_analysis.h"

namespace sosconvex {
namespace {

std::string ReadData(const std::string& relative) {
  std::ifstream in(std::string(SOSCONVEX_DATA_DIR) + "/" + relative);
  if (!in) throw std::runtime_error("cannot open data file " + relative);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const CertificateFile& AppendixGram() {
  static const CertificateFile file =
      ReadCertificate(ReadData("certificates/appendix_gram.cert"));
  return file;
}

void BM_RationalLdltAppendix(benchmark::State& state) {
  const RationalMatrix& q = AppendixGram().gram->gram;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RationalLdlt(q));
  }
}
BENCHMARK(BM_RationalLdltAppendix)->Unit(benchmark::kMillisecond);

void BM_VerifyGramAppendix(benchmark::State& state) {
  const CertificateFile& file = AppendixGram();
  for (auto _ : state) {
    benchmark::DoNotOptimize(VerifyGram(file.polynomial, *file.gram));
  }
}
BENCHMARK(BM_VerifyGramAppendix)->Unit(benchmark::kMillisecond);

void BM_ReadCertificateAppendix(benchmark::State& state) {
  const std::string text = ReadData("certificates/appendix_gram.cert");
  for (auto _ : state) {
    benchmark::DoNotOptimize(ReadCertificate(text));
  }
}
BENCHMARK(BM_ReadCertificateAppendix)->Unit(benchmark::kMillisecond);

void BM_BuildGHess(benchmark::State& state) {
  const Polynomial f = Catalog("h44").polynomial.value();
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildGHess(f));
  }
}
BENCHMARK(BM_BuildGHess)->Unit(benchmark::kMillisecond);

// Sum of the squares of n fixed quadratics in n variables, searched
// over the full quadratic basis; exercises the SDP and the rounding.
void BM_IsSosSumOfSquares(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Polynomial p(n);
  for (int i = 1; i <= n; ++i) {
    const int j = i % n + 1;
    Polynomial q = ParseInfix("x" + std::to_string(i) + "^2 - x" +
                                  std::to_string(j) + " + 1",
                              n);
    p += q * q;
  }
  for (auto _ : state) {
    SosStatus s = IsSos(p);
    if (!s.certified_sos()) state.SkipWithError("not certified");
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_IsSosSumOfSquares)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_IsSosMotzkin(benchmark::State& state) {
  const Polynomial p = Catalog("motzkin").polynomial.value();
  for (auto _ : state) {
    benchmark::DoNotOptimize(IsSos(p));
  }
}
BENCHMARK(BM_IsSosMotzkin)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sosconvex

BENCHMARK_MAIN();
