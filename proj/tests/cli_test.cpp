#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_binary() {
  if (const char* env = std::getenv("CDW_CLI")) return env;
#ifdef CDW_CLI_PATH
  return CDW_CLI_PATH;
#else
  FAIL("CDW_CLI must point at the built binary");
  return "";
#endif
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string log = "cli_test_log.txt";
  const std::string cmd = cli_binary() + " " + args + " > " + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "expected output file: " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("scan output is well-formed and byte-identical across reruns") {
  const std::string args =
      "scan --t 0.1 --beta 1:9:5 --out scan_run1.csv";
  REQUIRE(run_cli(args).exit_code == 0);
  REQUIRE(run_cli("scan --t 0.1 --beta 1:9:5 --out scan_run2.csv")
              .exit_code == 0);
  const std::string a = slurp("scan_run1.csv");
  const std::string b = slurp("scan_run2.csv");
  CHECK(a == b);

  std::stringstream lines(a);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "# cdw-scan v1");
  REQUIRE(std::getline(lines, line));
  CHECK(line.substr(0, 4) == "t,U,");
  int rows = 0;
  double prev_beta = -1.0;
  while (std::getline(lines, line)) {
    ++rows;
    // beta is the fifth column and must ascend.
    std::stringstream fields(line);
    std::string f;
    for (int k = 0; k < 5; ++k) REQUIRE(std::getline(fields, f, ','));
    const double beta = std::stod(f);
    CHECK(beta > prev_beta);
    prev_beta = beta;
  }
  CHECK(rows == 5);
}

TEST_CASE("scan respects the worker environment variable") {
  REQUIRE(run_cli("scan --beta 1:6:6 --out scan_serial.csv").exit_code == 0);
  const int rc = std::system(
      (std::string("CDW_WORKERS=4 ") + cli_binary() +
       " scan --beta 1:6:6 --out scan_parallel.csv > /dev/null 2>&1")
          .c_str());
  REQUIRE(WIFEXITED(rc));
  REQUIRE(WEXITSTATUS(rc) == 0);
  CHECK(slurp("scan_serial.csv") == slurp("scan_parallel.csv"));
}

TEST_CASE("degenerate grids are rejected") {
  const RunResult r = run_cli("scan --beta 1:9:0 --out unused.csv");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("empty grid") != std::string::npos);
}

TEST_CASE("unwritable output path is rejected") {
  const RunResult r =
      run_cli("scan --out /nonexistent-dir-zz/out.csv");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("cannot write") != std::string::npos);
}

TEST_CASE("contour census rejects odd sides") {
  const RunResult r = run_cli("contours --side 7 --out unused.csv");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("odd side") != std::string::npos);
}

TEST_CASE("contour census emits the entropy table") {
  REQUIRE(run_cli("contours --side 4 --out contours4.csv").exit_code == 0);
  std::stringstream lines(slurp("contours4.csv"));
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "# cdw-contours v1");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "ell,count,bound,ratio");
  bool saw_singleton = false;
  while (std::getline(lines, line)) {
    std::stringstream fields(line);
    std::string ell, count;
    REQUIRE(std::getline(fields, ell, ','));
    REQUIRE(std::getline(fields, count, ','));
    if (ell == "4") {
      CHECK(count == "1");
      saw_singleton = true;
    }
  }
  CHECK(saw_singleton);
}

TEST_CASE("verification subcommand round trip") {
  const RunResult ok = run_cli(
      "verify --only zigzag-identity --only trace-factorization "
      "--out verify.csv");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("PASS zigzag-identity") != std::string::npos);
  CHECK(ok.output.find("0 failed") != std::string::npos);
  const std::string csv = slurp("verify.csv");
  CHECK(csv.find("# cdw-verify v1") == 0);
  CHECK(csv.find("zigzag-identity") != std::string::npos);

  // The staggered comparison diagonalizes two 256-dimensional operators
  // independently, so its residual is nonzero and tolerance 0 rejects it.
  const RunResult bad =
      run_cli("verify --only staggered-equivalence --tol 0");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("FAIL staggered-equivalence") != std::string::npos);
}
