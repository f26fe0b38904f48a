#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "test_support.hpp"
#include "v1sign/coeff_io.hpp"
#include "v1sign/errors.hpp"
#include "v1sign/series.hpp"

namespace fs = std::filesystem;
using namespace v1sign;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "v1sign");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  auto parsed = cli::parse_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
  if (const int* code = std::get_if<int>(&parsed)) {
    o.code = *code;
  } else {
    o.code = cli::run(std::get<cli::RunConfig>(parsed), out, err);
  }
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("v1sign-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("coefficient CSV round trip") {
    const auto v = v1_coefficients(800);
    std::stringstream s;
    write_coefficients_csv(s, v);
    CHECK(s.str().rfind("n,V1\n0,1\n1,1\n2,0\n", 0) == 0);
    CHECK(read_coefficients_csv(s) == v);
  }

  TEST_CASE("malformed coefficient CSV") {
    std::istringstream no_header("0,1\n");
    CHECK_THROWS_AS(read_coefficients_csv(no_header), InvalidInput);
    std::istringstream gap("n,V1\n0,1\n2,0\n");
    CHECK_THROWS_AS(read_coefficients_csv(gap), InvalidInput);
    std::istringstream junk("n,V1\n0,abc\n");
    CHECK_THROWS_AS(read_coefficients_csv(junk), InvalidInput);
    std::istringstream empty("n,V1\n");
    CHECK_THROWS_AS(read_coefficients_csv(empty), InvalidInput);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("coeffs with max-n zero") {
    const Outcome o = invoke({"coeffs", "--max-n", "0"});
    CHECK(o.code == cli::kOk);
    CHECK(o.out == "n,V1\n0,1\n");
  }

  TEST_CASE("predict emits the m=2 plus row") {
    const Outcome o = invoke({"predict", "--family", "plus", "--m-max", "10", "--delta", "1/4"});
    REQUIRE(o.code == cli::kOk);
    std::istringstream lines(o.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "family,m,start,t_lo,t_hi,dist_lo");
    std::size_t rows = 0;
    bool found = false;
    while (std::getline(lines, line)) {
      ++rows;
      if (line.rfind("plus,2,", 0) == 0) found = line.rfind("plus,2,293,", 0) == 0;
    }
    CHECK(rows == 11);
    CHECK(found);
  }

  TEST_CASE("predict can restrict to admissible indices") {
    const Outcome o = invoke({"predict", "--family", "plus", "--m-max", "10", "--admissible-only"});
    REQUIRE(o.code == cli::kOk);
    CHECK(o.out.find("plus,4,877,") != std::string::npos);
    CHECK(o.out.find("plus,2,293,") == std::string::npos);
  }

  TEST_CASE("decimal delta is rejected") {
    const Outcome o = invoke({"predict", "--family", "plus", "--delta", "0.25"});
    CHECK(o.code == cli::kUsage);
    CHECK(o.err.find("p/q") != std::string::npos);
    CHECK(invoke({"predict", "--delta", "1/2"}).code == cli::kUsage);
  }

  TEST_CASE("usage errors") {
    CHECK(invoke({}).code == cli::kUsage);
    CHECK(invoke({"coeffs"}).code == cli::kUsage);
    CHECK(invoke({"scan"}).code == cli::kUsage);
    CHECK(invoke({"verify", "--max-n", "100"}).code == cli::kUsage);
    CHECK(invoke({"predict", "--family", "sideways"}).code == cli::kUsage);
    CHECK(invoke({"constants", "--format", "csv"}).code == cli::kUsage);
    CHECK(invoke({"bogus"}).code == cli::kUsage);
  }

  TEST_CASE("help documents the exit codes") {
    const Outcome o = invoke({"--help"});
    CHECK(o.code == cli::kOk);
    CHECK(o.out.find("Exit codes") != std::string::npos);
    CHECK(o.out.find(cli::kCeilingEnv) != std::string::npos);
    for (const char* sub : {"coeffs", "constants", "predict", "scan", "verify", "report"}) {
      CHECK(o.out.find(sub) != std::string::npos);
    }
  }

  TEST_CASE("outputs are not overwritten without --force") {
    TempDir dir;
    const fs::path file = dir / "c.csv";
    CHECK(invoke({"coeffs", "--max-n", "5", "-o", file.string()}).code == cli::kOk);
    const std::string first = slurp(file);
    const Outcome again = invoke({"coeffs", "--max-n", "6", "-o", file.string()});
    CHECK(again.code == cli::kIoError);
    CHECK(slurp(file) == first);
    CHECK(invoke({"coeffs", "--max-n", "6", "-o", file.string(), "--force"}).code == cli::kOk);
    CHECK(slurp(file) != first);
  }

  TEST_CASE("missing input file is an I/O error") {
    TempDir dir;
    CHECK(invoke({"scan", "--coeffs-csv", (dir / "absent.csv").string()}).code == cli::kIoError);
  }

  TEST_CASE("resource ceiling from the environment") {
    ::setenv(cli::kCeilingEnv, "100", 1);
    const Outcome over = invoke({"coeffs", "--max-n", "101"});
    const Outcome under = invoke({"coeffs", "--max-n", "100"});
    ::setenv(cli::kCeilingEnv, "lots", 1);
    const Outcome bad = invoke({"coeffs", "--max-n", "10"});
    ::unsetenv(cli::kCeilingEnv);
    CHECK(over.code == cli::kResourceLimit);
    CHECK(under.code == cli::kOk);
    CHECK(bad.code == cli::kUsage);
    CHECK(invoke({"coeffs", "--max-n", "50001"}).code == cli::kResourceLimit);
  }

  TEST_CASE("precision failures map to their exit code") {
    const Outcome o = invoke({"constants", "--width", "1/100000000000000000000"});
    CHECK(o.code == cli::kPrecisionError);
    CHECK(o.err.find("best enclosure") != std::string::npos);
  }

  TEST_CASE("constants JSON") {
    const Outcome o = invoke({"constants", "--digits", "30"});
    REQUIRE(o.code == cli::kOk);
    const auto j = nlohmann::json::parse(o.out);
    const auto ref = test::load_fixture("constants.json");
    for (const char* key : {"G", "c", "alpha", "gamma_plus", "gamma_minus", "A0", "A1"}) {
      REQUIRE(j.contains(key));
      const mpq_class lo = test::decimal(j[key]["lo"].get<std::string>());
      const mpq_class hi = test::decimal(j[key]["hi"].get<std::string>());
      CHECK(lo <= hi);
      CHECK(Enclosure(lo, hi).intersects(test::reference(ref, key)));
    }
  }

  TEST_CASE("verify reproduces the published table") {
    const Outcome o = invoke({"verify", "--max-n", "705"});
    CHECK(o.code == cli::kOk);
    CHECK(o.out.find("PASS initial_values: 20/20") != std::string::npos);
    CHECK(o.out.find("FAIL") == std::string::npos);
  }

  TEST_CASE("scan is deterministic and reads its own coefficient CSV") {
    TempDir dir;
    const fs::path csv = dir / "coeffs.csv";
    REQUIRE(invoke({"coeffs", "--max-n", "6000", "-o", csv.string()}).code == cli::kOk);
    const Outcome a = invoke({"scan", "--max-n", "6000", "--from", "292"});
    const Outcome b = invoke({"scan", "--coeffs-csv", csv.string(), "--from", "292"});
    const Outcome c = invoke({"scan", "--max-n", "6000", "--from", "292", "--jobs", "3"});
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("threshold_m") == 4);
    CHECK(j.at("conj4_windows").at("unlocalized").empty());

    const Outcome as_csv = invoke({"scan", "--max-n", "6000", "--from", "292", "--format", "csv"});
    CHECK(as_csv.code == cli::kOk);
    CHECK(as_csv.out.rfind("# triples\nstart,common_sign\n293,", 0) == 0);
    CHECK(invoke({"scan", "--coeffs-csv", csv.string(), "--to", "7000"}).code == cli::kUsage);
  }

  TEST_CASE("coefficient artifacts are byte-identical across runs") {
    CHECK(invoke({"coeffs", "--max-n", "3000"}).out == invoke({"coeffs", "--max-n", "3000", "--jobs", "4"}).out);
    CHECK(invoke({"constants"}).out == invoke({"constants"}).out);
  }

  TEST_CASE("report renders markdown") {
    const Outcome o = invoke({"report", "--max-n", "3000"});
    CHECK(o.code == cli::kOk);
    CHECK(o.out.rfind("# v1sign report", 0) == 0);
    CHECK(o.out.find("| alpha |") != std::string::npos);
    CHECK(o.out.find("| 8 | 702 |") != std::string::npos);
  }
}
