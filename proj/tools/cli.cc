#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "CLI11.hpp"
#include "sosconvex/certificate_io.h"
#include "sosconvex/constructions.h"
#include "sosconvex/poly_io.h"

namespace sosconvex::cli {
namespace {

namespace fs = std::filesystem;

// Thrown for unreadable or malformed input files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Logging {
  bool info = false;
  bool debug = false;
};

Logging LoggingFromEnv() {
  Logging l;
  const char* v = std::getenv("SOSCONVEX_LOG");
  if (v == nullptr) return l;
  const std::string s(v);
  l.debug = s == "debug";
  l.info = l.debug || s == "info";
  return l;
}

// Key-value report, one "key: value" line per field in insertion order.
class Report {
 public:
  void Add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
  }
  std::string str() const {
    std::string out;
    for (const auto& [k, v] : lines_) out += k + ": " + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << text;
}

Polynomial LoadPolynomial(const std::string& path) {
  try {
    return ParsePolynomial(ReadFile(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
}

PolyMatrix LoadMatrix(const std::string& path) {
  try {
    return DeserializePolyMatrix(ReadFile(path));
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(path + ": " + e.what());
  }
}

int ExitFor(SosStatus::Kind k) {
  switch (k) {
    case SosStatus::Kind::kCertifiedSos:
      return kExitYes;
    case SosStatus::Kind::kCertifiedNotSos:
      return kExitNo;
    case SosStatus::Kind::kInconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::string Verdict(int code) {
  switch (code) {
    case kExitYes:
      return "certified-yes";
    case kExitNo:
      return "certified-no";
    default:
      return "inconclusive";
  }
}

// Output path for input `index` of `count`: `out` itself for a single input,
// otherwise a file named after the input inside the directory `out`.
std::string OutputPath(const std::string& out, const std::string& input,
                       std::size_t count) {
  if (out.empty()) return "";
  if (count == 1) return out;
  fs::create_directories(out);
  return (fs::path(out) / fs::path(input).stem()).string() + ".cert";
}

std::vector<std::string> VariableNames(int num_vars, bool bipartite) {
  if (bipartite && num_vars % 2 == 0) {
    return StandardVariableNames(num_vars / 2, num_vars / 2);
  }
  return StandardVariableNames(num_vars);
}

// Describes `s` in the report and writes its certificate to `cert_path`.
void AddSosStatus(const SosStatus& s, const std::string& cert_path,
                  bool bipartite, Report& r) {
  r.Add("status", ToString(s.kind));
  r.Add("basis-size", std::to_string(s.search_basis.size()));
  r.Add("margin", FormatDouble(s.margin));
  CertificateFile file;
  file.polynomial = s.target;
  file.variables = VariableNames(s.target.num_vars(), bipartite);
  if (s.gram) {
    r.Add("certificate", "gram");
    r.Add("gram-size", std::to_string(s.gram->basis.size()));
    r.Add("scale", ToFractionString(s.gram->scale));
    file.gram = *s.gram;
    // The stored polynomial is the one the multiplier applies to.
    file.gram->multiplier = Polynomial::Constant(s.target.num_vars(), Scalar(1));
  } else if (s.separation) {
    r.Add("certificate", "separation");
    r.Add("moment-basis-size", std::to_string(s.separation->moment_basis.size()));
    r.Add("pairing",
          ToFractionString(VerifySeparation(s.target, *s.separation).pairing));
    file.separation = *s.separation;
  } else {
    r.Add("certificate", "none");
  }
  r.Add("diagnostic", s.diagnostic);
  if (!cert_path.empty() && (s.gram || s.separation)) {
    WriteFile(cert_path, WriteCertificate(file));
    r.Add("certificate-path", cert_path);
  }
}

struct Outcome {
  int code = kExitInconclusive;
  std::string report;
  std::string error;
};

// Runs `task` over every input, at most `jobs` at a time, and prints the
// reports in input order. The exit code is the largest per-input code.
int RunInputs(const std::vector<std::string>& inputs, int jobs,
              const std::function<Outcome(const std::string&, std::size_t)>& task,
              std::ostream& out, std::ostream& err) {
  std::vector<Outcome> results(inputs.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < inputs.size(); start += width) {
    std::vector<std::future<Outcome>> running;
    const std::size_t end = std::min(inputs.size(), start + width);
    for (std::size_t i = start; i < end; ++i) {
      running.push_back(std::async(
          width == 1 ? std::launch::deferred : std::launch::async,
          [&, i] {
            try {
              return task(inputs[i], i);
            } catch (const DataError& e) {
              return Outcome{kExitDataError, "", e.what()};
            }
          }));
    }
    for (std::size_t i = start; i < end; ++i) results[i] = running[i - start].get();
  }
  int code = kExitYes;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i > 0) out << "\n";
    out << results[i].report;
    if (!results[i].error.empty()) err << "error: " << results[i].error << "\n";
    code = std::max(code, results[i].code);
  }
  return code;
}

SosOptions MakeSosOptions(const Logging& log, std::ostream& err) {
  SosOptions o;
  if (log.debug) o.search.sdp.log = &err;
  return o;
}

WitnessKind ParseWitness(const std::string& name, const std::string& lambda) {
  if (name == "second-order") return WitnessKind::SecondOrder();
  if (name == "first-order") return WitnessKind::FirstOrder();
  if (name == "midpoint") {
    try {
      return WitnessKind::Midpoint(ParseScalar(lambda));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--lambda", e.what());
    }
  }
  throw CLI::ValidationError("--witness", "unknown witness '" + name + "'");
}

int CheckSos(const std::vector<std::string>& polys,
             const std::vector<std::string>& matrices, const std::string& out_path,
             int jobs, bool timing, const Logging& log, std::ostream& out,
             std::ostream& err) {
  std::vector<std::string> inputs = polys;
  inputs.insert(inputs.end(), matrices.begin(), matrices.end());
  if (inputs.empty()) {
    throw CLI::ValidationError("check-sos", "give --poly or --matrix");
  }
  const std::size_t num_polys = polys.size();
  return RunInputs(
      inputs, jobs,
      [&](const std::string& path, std::size_t index) {
        const auto start = std::chrono::steady_clock::now();
        Report r;
        r.Add("command", "check-sos");
        r.Add("input", path);
        SosStatus s;
        const bool is_matrix = index >= num_polys;
        if (is_matrix) {
          r.Add("kind", "matrix");
          s = IsSosMatrix(LoadMatrix(path), MakeSosOptions(log, err));
        } else {
          r.Add("kind", "polynomial");
          s = IsSos(LoadPolynomial(path), MakeSosOptions(log, err));
        }
        const int code = ExitFor(s.kind);
        r.Add("verdict", Verdict(code));
        AddSosStatus(s, OutputPath(out_path, path, inputs.size()), is_matrix, r);
        if (timing) {
          const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
              std::chrono::steady_clock::now() - start);
          r.Add("elapsed-ms", std::to_string(ms.count()));
        }
        return Outcome{code, r.str(), ""};
      },
      out, err);
}

int CheckSosConvex(const std::vector<std::string>& polys,
                   const std::string& witness, const std::string& lambda,
                   int multiplier_r, const std::string& out_path, int jobs,
                   bool timing, const Logging& log, std::ostream& out,
                   std::ostream& err) {
  if (polys.empty()) throw CLI::ValidationError("check-sos-convex", "give --poly");
  const WitnessKind kind = ParseWitness(witness, lambda);
  return RunInputs(
      polys, jobs,
      [&](const std::string& path, std::size_t) {
        const auto start = std::chrono::steady_clock::now();
        Polynomial p = LoadPolynomial(path);
        Report r;
        r.Add("command", "check-sos-convex");
        r.Add("input", path);
        r.Add("witness", kind.name());
        ConvexityStatus c = IsSosConvex(p, kind, MakeSosOptions(log, err));
        const int code = ExitFor(c.detail.kind);
        r.Add("verdict", Verdict(code));
        r.Add("convexity-status", ToString(c.kind));
        if (!c.note.empty()) r.Add("note", c.note);
        const std::string cert = OutputPath(out_path, path, polys.size());
        AddSosStatus(c.detail, cert, kind.type == WitnessKind::kSecondOrder, r);
        if (code != kExitYes && multiplier_r > 0) {
          MultiplierOptions mo;
          mo.sos = MakeSosOptions(log, err);
          ConvexityStatus m = CheckConvexityMultiplier(p, multiplier_r, mo);
          r.Add("convexity", m.kind == ConvexityStatus::Kind::kConvexNumeric
                                 ? "certified-by-multiplier"
                                 : "not-certified");
          if (m.multiplier) {
            r.Add("multiplier",
                  ToInfix(*m.multiplier, StandardVariableNames(p.num_vars(),
                                                               p.num_vars())));
            r.Add("multiplier-power", std::to_string(m.multiplier_power));
          }
          r.Add("convexity-note", m.note);
          if (m.detail.gram && !cert.empty()) {
            CertificateFile file;
            file.polynomial = Hessian(p).QuadraticForm();
            file.variables = StandardVariableNames(p.num_vars(), p.num_vars());
            file.gram = *m.detail.gram;
            const std::string path2 = cert + ".convexity";
            WriteFile(path2, WriteCertificate(file));
            r.Add("convexity-certificate-path", path2);
          }
        }
        if (timing) {
          const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
              std::chrono::steady_clock::now() - start);
          r.Add("elapsed-ms", std::to_string(ms.count()));
        }
        return Outcome{code, r.str(), ""};
      },
      out, err);
}

int VerifyCert(const std::vector<std::string>& certs, const std::string& poly,
               int jobs, std::ostream& out, std::ostream& err) {
  if (certs.empty()) throw CLI::ValidationError("verify-cert", "give --cert");
  std::optional<Polynomial> given;
  if (!poly.empty()) {
    try {
      given = LoadPolynomial(poly);
    } catch (const DataError& e) {
      err << "error: " << e.what() << "\n";
      return kExitDataError;
    }
  }
  return RunInputs(
      certs, jobs,
      [&](const std::string& path, std::size_t) {
        CertificateFile file;
        try {
          file = ReadCertificate(ReadFile(path));
        } catch (const ParseError& e) {
          throw DataError(path + ": " + e.what());
        }
        Report r;
        r.Add("command", "verify-cert");
        r.Add("certificate", path);
        r.Add("kind", file.gram ? "gram" : "separation");
        bool multiplied = false;
        if (given) {
          if (given->num_vars() != file.polynomial.num_vars()) {
            throw DataError("polynomial and certificate disagree on the number "
                            "of variables");
          }
          // The polynomial may be given with or without the multiplier
          // already applied.
          if (file.gram && *given == file.gram->multiplier * file.polynomial) {
            multiplied = true;
          } else {
            file.polynomial = *given;
          }
          r.Add("polynomial", poly);
        }
        VerificationReport v = VerifyCertificateFile(file);
        const int code = v.valid ? kExitYes : kExitNo;
        r.Add("verdict", v.valid ? "valid" : "invalid");
        r.Add("psd", ToString(v.psd_status));
        if (file.gram) {
          r.Add("scale", ToFractionString(file.gram->scale));
          r.Add("gram-size", std::to_string(file.gram->basis.size()));
          r.Add("multiplier",
                ToInfix(file.gram->multiplier,
                        file.variables.size() ==
                                static_cast<std::size_t>(file.polynomial.num_vars())
                            ? file.variables
                            : StandardVariableNames(file.polynomial.num_vars())));
          if (given) r.Add("multiplier-applied", multiplied ? "yes" : "no");
        } else {
          r.Add("pairing", ToFractionString(v.pairing));
          r.Add("moment-basis-size",
                std::to_string(file.separation->moment_basis.size()));
        }
        r.Add("message", v.message);
        return Outcome{code, r.str(), ""};
      },
      out, err);
}

int CatalogCommand(bool list, const std::string& name, bool emit,
                   const std::string& format, const std::string& out_path,
                   std::ostream& out) {
  if (list || name.empty()) {
    for (const std::string& n : CatalogNames()) {
      out << n << ": " << Catalog(n).description << "\n";
    }
    return kExitYes;
  }
  CatalogEntry e;
  try {
    e = Catalog(name);
  } catch (const std::out_of_range& ex) {
    throw CLI::ValidationError("--name", ex.what());
  }
  std::string text;
  if (format == "canonical") {
    text = e.polynomial ? Serialize(*e.polynomial) : Serialize(*e.matrix);
  } else if (e.polynomial) {
    text = ToInfix(*e.polynomial) + "\n";
  } else {
    for (int i = 0; i < e.matrix->dim(); ++i) {
      for (int j = 0; j < e.matrix->dim(); ++j) {
        text += "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                "] " + ToInfix((*e.matrix)(i, j)) + "\n";
      }
    }
  }
  if (emit) {
    if (out_path.empty()) {
      out << text;
    } else {
      WriteFile(out_path, text);
      out << "written: " << out_path << "\n";
    }
    return kExitYes;
  }
  Report r;
  r.Add("command", "catalog");
  r.Add("name", e.name);
  r.Add("description", e.description);
  for (const std::string& c : e.claims) r.Add("claim", c);
  if (e.polynomial) {
    r.Add("variables", std::to_string(e.polynomial->num_vars()));
    r.Add("degree", std::to_string(e.polynomial->degree()));
    r.Add("terms", std::to_string(e.polynomial->num_terms()));
  } else {
    r.Add("dimension", std::to_string(e.matrix->dim()));
  }
  out << r.str();
  return kExitYes;
}

int ClassifyCommand(int n, int d, const std::string& which, std::ostream& out) {
  std::vector<bool> flags;
  if (which == "forms" || which == "both") flags.push_back(true);
  if (which == "polynomials" || which == "both") flags.push_back(false);
  if (flags.empty()) throw CLI::ValidationError("--type", "unknown type " + which);
  Report r;
  r.Add("command", "classify");
  r.Add("n", std::to_string(n));
  r.Add("d", std::to_string(d));
  for (bool homogeneous : flags) {
    Classification c;
    CoverageRoute route;
    try {
      c = Classify(n, d, homogeneous);
      route = CoveragePlan(n, d, homogeneous);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("classify", e.what());
    }
    const std::string prefix = homogeneous ? "forms" : "polynomials";
    r.Add(prefix + ".psd-vs-sos", c.psd_equals_sos ? "equal" : "strict");
    r.Add(prefix + ".convex-vs-sos-convex",
          c.convex_equals_sos_convex ? "equal" : "strict");
    r.Add(prefix + ".route", route.equal_case ? "equal case" : route.description);
  }
  out << r.str();
  return kExitYes;
}

int Construct(int degree, unsigned long long seed, int max_r,
              const std::string& gamma_text, const std::string& out_dir,
              bool timing, const Logging& log, std::ostream& out,
              std::ostream& err) {
  if (degree < 8 || degree % 2 != 0) {
    throw CLI::ValidationError("--degree", "degree must be even and at least 8");
  }
  const auto start = std::chrono::steady_clock::now();
  const int seed_degree = degree - 2;
  Report r;
  r.Add("command", "construct");
  r.Add("degree", std::to_string(degree));
  r.Add("seed", std::to_string(seed));

  AlphaOptions ao;
  ao.sos = MakeSosOptions(log, err);
  ao.seed = seed;
  std::optional<AlphaSearch> alpha = FindAlpha(seed_degree, ao);
  if (!alpha) {
    r.Add("verdict", "inconclusive");
    r.Add("diagnostic", "no alpha with a certificate of not being sos");
    out << r.str();
    return kExitInconclusive;
  }
  r.Add("alpha", ToFractionString(alpha->alpha));
  r.Add("sphere-min", FormatDouble(alpha->sphere_min));
  const Polynomial m = MotzkinFamily(seed_degree, alpha->alpha);
  const Polynomial g = DefaultPadding(seed_degree);

  GammaOptions go;
  go.seed = seed;
  GammaEstimate ge = FindGamma(m, g, go);
  r.Add("gamma-ratio-estimate", FormatDouble(ge.ratio));
  Scalar gamma = ge.gamma;
  if (!gamma_text.empty()) {
    try {
      gamma = ParseScalar(gamma_text);
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--gamma", e.what());
    }
  }
  r.Add("gamma", ToFractionString(gamma));
  ConstructionRecipe recipe = BuildThm58(m, g, gamma);

  // f is not sos-convex because its (1,1) Hessian entry m is not sos.
  const bool seed_not_sos = alpha->status.certified_not_sos();
  r.Add("seed-status", ToString(alpha->status.kind));

  MultiplierOptions mo;
  mo.sos = MakeSosOptions(log, err);
  ConvexityStatus conv = CheckConvexityMultiplier(recipe.f, max_r, mo);
  const bool convex = conv.kind == ConvexityStatus::Kind::kConvexNumeric;
  r.Add("convexity", convex ? "certified-by-multiplier" : "not-certified");
  if (conv.multiplier) {
    r.Add("multiplier", ToInfix(*conv.multiplier, StandardVariableNames(3, 3)));
    r.Add("multiplier-power", std::to_string(conv.multiplier_power));
  }
  const int code = convex && seed_not_sos ? kExitYes : kExitInconclusive;
  r.Add("verdict", Verdict(code));

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    auto path = [&](const std::string& name) {
      return (fs::path(out_dir) / name).string();
    };
    WriteFile(path("m.poly"), Serialize(m));
    WriteFile(path("g.poly"), Serialize(g));
    WriteFile(path("f.poly"), Serialize(recipe.f));
    WriteFile(path("f_dehomogenized.poly"),
              Serialize(DehomogenizeConstruction(recipe)));
    std::string recipe_text = "degree " + std::to_string(degree) + "\n" +
                              "alpha " + ToFractionString(alpha->alpha) + "\n" +
                              "gamma " + ToFractionString(gamma) + "\n" +
                              "seed " + std::to_string(seed) + "\n";
    WriteFile(path("recipe.txt"), recipe_text);
    if (alpha->status.separation) {
      CertificateFile file;
      file.polynomial = alpha->status.target;
      file.variables = StandardVariableNames(3);
      file.separation = *alpha->status.separation;
      WriteFile(path("m_not_sos.cert"), WriteCertificate(file));
    }
    if (conv.detail.gram) {
      CertificateFile file;
      file.polynomial = Hessian(recipe.f).QuadraticForm();
      file.variables = StandardVariableNames(3, 3);
      file.gram = *conv.detail.gram;
      WriteFile(path("f_convexity.cert"), WriteCertificate(file));
    }
    r.Add("bundle", out_dir);
  }
  if (timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    r.Add("elapsed-ms", std::to_string(ms.count()));
  }
  out << r.str();
  return code;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  const Logging log = LoggingFromEnv();
  CLI::App app{"Decide and certify sos, convexity and sos-convexity of polynomials",
               "sosconvex"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  unsigned long long seed = kDefaultSeed;
  int jobs = 1;
  bool timing = false;
  app.add_option("--seed", seed, "Seed for sampling steps")
      ->capture_default_str();
  app.add_option("--jobs", jobs, "Inputs processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--timing", timing, "Add elapsed time to reports");

  std::vector<std::string> polys, matrices, certs;
  std::string out_path, witness = "second-order", lambda = "1/2", poly;
  int multiplier_r = 0;

  auto* sos = app.add_subcommand("check-sos", "Decide whether a polynomial is sos");
  sos->add_option("--poly", polys, "Polynomial file (canonical or infix)");
  sos->add_option("--matrix", matrices, "Polynomial matrix file");
  sos->add_option("--out", out_path, "Certificate file (directory for many inputs)");

  auto* conv = app.add_subcommand("check-sos-convex",
                                  "Decide whether a polynomial is sos-convex");
  conv->add_option("--poly", polys, "Polynomial file")->required();
  conv->add_option("--witness", witness,
                   "second-order, first-order or midpoint")
      ->capture_default_str();
  conv->add_option("--lambda", lambda, "Midpoint weight in (0,1)")
      ->capture_default_str();
  conv->add_option("--multiplier-r", multiplier_r,
                   "If not sos-convex, try (sum of squares of x_i)^r multipliers "
                   "up to this r to certify convexity")
      ->check(CLI::NonNegativeNumber);
  conv->add_option("--out", out_path, "Certificate file");

  auto* verify = app.add_subcommand("verify-cert", "Check a certificate exactly");
  verify->add_option("--cert", certs, "Certificate file")->required();
  verify->add_option("--poly", poly, "Polynomial the certificate must cover");

  int degree = 8, max_r = 2;
  std::string gamma_text, out_dir;
  auto* construct = app.add_subcommand(
      "construct", "Build a convex form that is not sos-convex");
  construct->add_option("--degree", degree, "Degree of the form (even, >= 8)")
      ->capture_default_str();
  construct->add_option("--max-r", max_r, "Largest multiplier power")
      ->capture_default_str();
  construct->add_option("--gamma", gamma_text, "Use this gamma instead of the estimate");
  construct->add_option("--out", out_dir, "Directory for the recipe bundle");

  bool list = false, emit = false;
  std::string name, format = "canonical";
  auto* catalog = app.add_subcommand("catalog", "Known examples");
  catalog->add_flag("--list", list, "List entries");
  catalog->add_option("--name", name, "Entry name");
  catalog->add_flag("--emit", emit, "Print the entry itself");
  catalog->add_option("--format", format, "canonical or infix")
      ->check(CLI::IsMember({"canonical", "infix"}))
      ->capture_default_str();
  catalog->add_option("--out", out_path, "Write the emitted entry here");

  int n = 0, d = 0;
  std::string type = "both";
  auto* classify = app.add_subcommand(
      "classify", "Whether psd = sos and convex = sos-convex for (n, d)");
  classify->add_option("--n", n, "Number of variables")->required();
  classify->add_option("--d", d, "Degree")->required();
  classify->add_option("--type", type, "forms, polynomials or both")
      ->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitYes;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sos->parsed()) {
      return CheckSos(polys, matrices, out_path, jobs, timing, log, out, err);
    }
    if (conv->parsed()) {
      return CheckSosConvex(polys, witness, lambda, multiplier_r, out_path, jobs,
                            timing, log, out, err);
    }
    if (verify->parsed()) return VerifyCert(certs, poly, jobs, out, err);
    if (construct->parsed()) {
      return Construct(degree, seed, max_r, gamma_text, out_dir, timing, log,
                       out, err);
    }
    if (catalog->parsed()) {
      return CatalogCommand(list, name, emit, format, out_path, out);
    }
    if (classify->parsed()) return ClassifyCommand(n, d, type, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace sosconvex::cli
