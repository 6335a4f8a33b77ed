#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.h"
#include "sosconvex/certificate_io.h"
#include "test_util.h"

namespace sosconvex::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sosconvex_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  fs::path dir_;
};

bool HasLine(const std::string& report, const std::string& line) {
  std::istringstream in(report);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

TEST_F(CliTest, CheckSosOnSquareSucceeds) {
  Result r = RunCli({"check-sos", "--poly", Write("p.poly", "(x1 - x2)^2")});
  EXPECT_EQ(r.code, kExitYes);
  EXPECT_TRUE(HasLine(r.out, "verdict: certified-yes")) << r.out;
  EXPECT_TRUE(HasLine(r.out, "certificate: gram")) << r.out;
}

TEST_F(CliTest, CheckSosOnMotzkinReportsSeparation) {
  const std::string cert = (dir_ / "m.cert").string();
  Result r = RunCli({"check-sos", "--poly", testing::DataPath("motzkin.poly"),
                     "--out", cert});
  EXPECT_EQ(r.code, kExitNo);
  EXPECT_TRUE(HasLine(r.out, "verdict: certified-no")) << r.out;
  EXPECT_TRUE(HasLine(r.out, "certificate: separation")) << r.out;
  Result v = RunCli({"verify-cert", "--cert", cert});
  EXPECT_EQ(v.code, kExitYes) << v.out;
  EXPECT_TRUE(HasLine(v.out, "verdict: valid"));
}

TEST_F(CliTest, CheckSosOnChoiMatrix) {
  Result r = RunCli(
      {"check-sos", "--matrix", testing::DataPath("catalog/choi.polymatrix")});
  EXPECT_EQ(r.code, kExitNo) << r.out << r.err;
  EXPECT_TRUE(HasLine(r.out, "kind: matrix"));
}

TEST_F(CliTest, CheckSosConvexWitnesses) {
  const std::string p = Write("q.poly", "x1^4 + x2^4");
  for (const char* w : {"second-order", "first-order", "midpoint"}) {
    Result r = RunCli({"check-sos-convex", "--poly", p, "--witness", w});
    EXPECT_EQ(r.code, kExitYes) << w << "\n" << r.out << r.err;
  }
  Result bad = RunCli({"check-sos-convex", "--poly", p, "--witness", "other"});
  EXPECT_EQ(bad.code, kExitUsage);
  Result lambda = RunCli({"check-sos-convex", "--poly", p, "--witness",
                          "midpoint", "--lambda", "3/2"});
  EXPECT_EQ(lambda.code, kExitUsage);
}

TEST_F(CliTest, F36MultiplierCertificateRoundTrips) {
  const std::string out = (dir_ / "f36.cert").string();
  Result r = RunCli({"check-sos-convex", "--poly",
                     testing::DataPath("catalog/f36.poly"), "--multiplier-r",
                     "1", "--out", out});
  EXPECT_EQ(r.code, kExitNo) << r.out << r.err;
  EXPECT_TRUE(HasLine(r.out, "convexity: certified-by-multiplier")) << r.out;
  Result v1 = RunCli({"verify-cert", "--cert", out});
  EXPECT_EQ(v1.code, kExitYes) << v1.out;
  Result v2 = RunCli({"verify-cert", "--cert", out + ".convexity"});
  EXPECT_EQ(v2.code, kExitYes) << v2.out;
}

TEST_F(CliTest, VerifyAppendixCertificatesWithoutSdp) {
  ::setenv("SOSCONVEX_DISABLE_SDP", "1", 1);
  Result g = RunCli(
      {"verify-cert", "--cert",
       testing::DataPath("certificates/appendix_gram.cert"), "--poly",
       testing::DataPath("f36_multiplied.poly")});
  Result s = RunCli(
      {"verify-cert", "--cert",
       testing::DataPath("certificates/appendix_separation.cert")});
  ::unsetenv("SOSCONVEX_DISABLE_SDP");
  EXPECT_EQ(g.code, kExitYes) << g.out << g.err;
  EXPECT_TRUE(HasLine(g.out, "scale: 1/84")) << g.out;
  EXPECT_TRUE(HasLine(g.out, "multiplier-applied: yes")) << g.out;
  EXPECT_EQ(s.code, kExitYes) << s.out << s.err;
  EXPECT_TRUE(HasLine(s.out, "pairing: -364547/16")) << s.out;
}

TEST_F(CliTest, TamperedCertificateIsInvalid) {
  std::string text = testing::ReadData("certificates/appendix_gram.cert");
  const auto pos = text.find("\"Q\"");
  ASSERT_NE(pos, std::string::npos);
  const auto first = text.find('"', text.find('[', pos) + 1);
  const auto end = text.find('"', first + 1);
  text.replace(first + 1, end - first - 1, "999/1");
  Result r = RunCli({"verify-cert", "--cert", Write("bad.cert", text)});
  EXPECT_EQ(r.code, kExitNo) << r.out << r.err;
  EXPECT_TRUE(HasLine(r.out, "verdict: invalid"));
}

TEST_F(CliTest, VerifyRejectsUnrelatedPolynomial) {
  Result r = RunCli(
      {"verify-cert", "--cert",
       testing::DataPath("certificates/appendix_gram.cert"), "--poly",
       Write("other.poly", "x3^2*y3^2")});
  EXPECT_EQ(r.code, kExitNo) << r.out << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"check-sos-convex"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"classify", "--n", "3", "--d", "5"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"--jobs", "0", "classify", "--n", "3", "--d", "4"}).code,
            kExitUsage);
  EXPECT_EQ(RunCli({"catalog", "--name", "nope"}).code, kExitUsage);
}

TEST_F(CliTest, DataErrors) {
  EXPECT_EQ(RunCli({"check-sos", "--poly", (dir_ / "missing").string()}).code,
            kExitDataError);
  EXPECT_EQ(
      RunCli({"check-sos", "--poly", Write("bad.poly", "x1^^2 +")}).code,
      kExitDataError);
  EXPECT_EQ(RunCli({"verify-cert", "--cert", Write("bad.cert", "{\"kind\":")})
                .code,
            kExitDataError);
}

TEST_F(CliTest, ReportsAreDeterministic) {
  const std::vector<std::string> args = {
      "check-sos", "--poly", testing::DataPath("catalog/robinson.poly")};
  Result a = RunCli(args);
  Result b = RunCli(args);
  EXPECT_EQ(a.code, b.code);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("elapsed-ms"), std::string::npos);
  Result t = RunCli({"--timing", "check-sos", "--poly",
                     testing::DataPath("catalog/robinson.poly")});
  EXPECT_NE(t.out.find("elapsed-ms"), std::string::npos);
}

TEST_F(CliTest, ParallelJobsMatchSequentialOutput) {
  std::vector<std::string> args = {"check-sos"};
  for (const char* name : {"motzkin", "robinson", "h44", "h34"}) {
    args.push_back("--poly");
    args.push_back(testing::DataPath(std::string("catalog/") + name + ".poly"));
  }
  Result seq = RunCli(args);
  args.insert(args.begin(), {"--jobs", "4"});
  Result par = RunCli(args);
  EXPECT_EQ(seq.code, par.code);
  EXPECT_EQ(seq.out, par.out);
}

TEST_F(CliTest, CatalogEmitMatchesGoldenFiles) {
  for (const char* name : {"motzkin", "f36", "h44"}) {
    Result r = RunCli({"catalog", "--name", name, "--emit"});
    EXPECT_EQ(r.code, kExitYes);
    EXPECT_EQ(r.out, testing::ReadData(std::string("catalog/") + name + ".poly"));
  }
  Result m = RunCli({"catalog", "--name", "choi", "--emit"});
  EXPECT_EQ(m.out, testing::ReadData("catalog/choi.polymatrix"));
  Result list = RunCli({"catalog", "--list"});
  EXPECT_EQ(list.code, kExitYes);
  EXPECT_NE(list.out.find("robinson"), std::string::npos);
}

TEST_F(CliTest, ClassifyReportsBothKinds) {
  Result r = RunCli({"classify", "--n", "3", "--d", "6"});
  EXPECT_EQ(r.code, kExitYes);
  EXPECT_TRUE(HasLine(r.out, "forms.psd-vs-sos: strict")) << r.out;
  EXPECT_TRUE(HasLine(r.out, "forms.convex-vs-sos-convex: strict"));
  EXPECT_TRUE(HasLine(r.out, "polynomials.convex-vs-sos-convex: strict"));
  Result eq = RunCli({"classify", "--n", "3", "--d", "4", "--type", "forms"});
  EXPECT_TRUE(HasLine(eq.out, "forms.route: equal case")) << eq.out;
  EXPECT_EQ(eq.out.find("polynomials."), std::string::npos);
}

TEST_F(CliTest, ConstructWritesVerifiableBundle) {
  const std::string out = (dir_ / "bundle").string();
  Result r = RunCli({"construct", "--degree", "8", "--out", out});
  ASSERT_EQ(r.code, kExitYes) << r.out << r.err;
  for (const char* f : {"m.poly", "g.poly", "f.poly", "f_dehomogenized.poly",
                        "recipe.txt", "m_not_sos.cert", "f_convexity.cert"}) {
    EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
  }
  for (const char* c : {"m_not_sos.cert", "f_convexity.cert"}) {
    Result v = RunCli({"verify-cert", "--cert", (fs::path(out) / c).string()});
    EXPECT_EQ(v.code, kExitYes) << c << "\n" << v.out;
  }
  EXPECT_EQ(RunCli({"construct", "--degree", "7"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"construct", "--degree", "6"}).code, kExitUsage);
}

}  // namespace
}  // namespace sosconvex::cli
