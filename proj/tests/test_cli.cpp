#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gevrey/system.hpp"

namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"gevrey"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return gevrey::run_cli(static_cast<int>(argv.size()), argv.data());
}

fs::path tmpdir() {
  fs::path d = fs::temp_directory_path() / "gevrey_cli_tests";
  fs::create_directories(d);
  return d;
}

std::string write_fixture(const std::string& name, const std::string& text) {
  fs::path p = tmpdir() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("expand runs and writes a commented table") {
  std::string in = write_fixture("euler.json", R"({"kind":"raw","a":0.0,"f":[[1,0,1.0]]})");
  std::string out = (tmpdir() / "euler_expand.csv").string();
  CHECK(run({"expand", "--input", in, "--output", out, "--order", "40"}) == 0);
  std::string text = slurp(out);
  CHECK(text.rfind("# gevrey ", 0) == 0);
  CHECK(text.find("n,sign_phi,log_abs_phi,s_n,delta_s") != std::string::npos);
  CHECK(text.find("order=40") != std::string::npos);
  // no timestamps: a second run is byte-identical
  std::string out2 = (tmpdir() / "euler_expand_2.csv").string();
  CHECK(run({"expand", "--input", in, "--output", out2, "--order", "40"}) == 0);
  CHECK(slurp(out2) == text);
}

TEST_CASE("sinf exit codes and output document") {
  std::string in = write_fixture("ric.json", R"({"kind":"riccati","a":0.5,"b":1.0})");
  std::string out = (tmpdir() / "sinf.json").string();
  CHECK(run({"sinf", "--input", in, "--output", out, "--order", "80"}) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"value\"") != std::string::npos);
  CHECK(text.find("\"error_estimate\"") != std::string::npos);
  CHECK(text.find("\"method\"") != std::string::npos);

  CHECK(run({"sinf", "--input", in, "--order", "5"}) == 2);
  CHECK(run({"sinf", "--input", (tmpdir() / "missing.json").string()}) == 2);
  CHECK(run({"sinf", "--input", in, "--method", "bogus"}) == 2);
}

TEST_CASE("malformed invocations exit with 2") {
  std::string out = (tmpdir() / "bad.csv").string();
  CHECK(run({"scan", "--output", out, "--a-range", "5:1", "--grid", "4x4", "--order", "20"}) == 2);
  CHECK(run({"scan", "--output", out, "--grid", "nonsense", "--order", "20"}) == 2);
  CHECK(run({"unknown-subcommand"}) == 2);
  std::string badjson = write_fixture("bad.json", "{broken");
  CHECK(run({"expand", "--input", badjson}) == 2);
}

TEST_CASE("normalize shifts the riccati parameter into range") {
  std::string in = write_fixture("ric_neg.json", R"({"kind":"riccati","a":-3.2,"b":1.0})");
  std::string out = (tmpdir() / "norm.json").string();
  CHECK(run({"normalize", "--input", in, "--output", out, "--order", "30"}) == 0);
  gevrey::ParsedSystem back = gevrey::parse_system_text(slurp(out));
  REQUIRE(back.kind == gevrey::SystemKind::normalized);
  CHECK(back.normalized->a == doctest::Approx(2.8).epsilon(1e-12));
  CHECK(slurp(out).find("\"transform\"") != std::string::npos);

  CHECK(run({"normalize", "--input", out}) == 2);  // already normalized
}

TEST_CASE("scan writes csv, pgm and contour files deterministically") {
  std::string out1 = (tmpdir() / "scan1.csv").string();
  std::string out2 = (tmpdir() / "scan2.csv").string();
  std::vector<std::string> common = {"--a-range", "-3:-1", "--b-range", "-1:1",
                                     "--grid", "9x9", "--order", "40"};
  auto with = [&](const std::string& o, const std::string& w) {
    std::vector<std::string> v{"scan", "--output", o, "--workers", w};
    v.insert(v.end(), common.begin(), common.end());
    return v;
  };
  CHECK(run(with(out1, "1")) == 0);
  CHECK(run(with(out2, "3")) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(fs::exists(tmpdir() / "scan1.pgm"));
  CHECK(fs::exists(tmpdir() / "scan1_contours.csv"));
  std::string pgm = slurp((tmpdir() / "scan1.pgm").string());
  CHECK(pgm.rfind("P2\n9 9\n2\n", 0) == 0);
}

TEST_CASE("scan reproduces the committed fixture byte for byte") {
  std::string out = (tmpdir() / "golden.csv").string();
  CHECK(run({"scan", "--output", out, "--a-range", "-6:0", "--b-range", "-2:2",
             "--grid", "21x21", "--order", "70", "--workers", "2"}) == 0);
  std::string golden = slurp(std::string(TEST_DATA_DIR) + "/golden_scan.csv");
  REQUIRE(!golden.empty());
  CHECK(slurp(out) == golden);
}

TEST_CASE("borel profile table for the euler equation") {
  std::string in = write_fixture("euler2.json", R"({"kind":"raw","a":0.0,"f":[[1,0,1.0]]})");
  std::string out = (tmpdir() / "borel.csv").string();
  CHECK(run({"borel", "--input", in, "--output", out, "--order", "40", "--panels", "48"}) == 0);
  std::string text = slurp(out);
  CHECK(text.find("n,Phi_n,Z_n") != std::string::npos);
  CHECK(text.find("abel_sum") != std::string::npos);
  CHECK(text.find("neg_gamma_sinf") != std::string::npos);
  // after normalization the euler profile is 2 - 2(1+w)^3: Z_3 = -2, then 0
  std::istringstream lines(text);
  std::string line;
  bool sawRow3 = false, sawRow4 = false;
  while (std::getline(lines, line)) {
    if (line.rfind("3,", 0) == 0) {
      CHECK(std::stod(line.substr(line.rfind(',') + 1)) == doctest::Approx(-2.0).epsilon(1e-10));
      sawRow3 = true;
    }
    if (line.rfind("4,", 0) == 0) {
      CHECK(std::fabs(std::stod(line.substr(line.rfind(',') + 1))) <= 1e-10);
      sawRow4 = true;
    }
  }
  CHECK(sawRow3);
  CHECK(sawRow4);
}

TEST_CASE("verify suite passes") { CHECK(run({"verify"}) == 0); }

TEST_SUITE_END();
