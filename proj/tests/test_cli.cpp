#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "stackcut/cli.hpp"
#include "stackcut/io.hpp"

using namespace stackcut;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("stackcut_cli_" + std::to_string(std::rand()) + "_" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("generate") {
  TempDir dir;
  const auto path = dir.file("inst.csv");
  auto r = run({"generate", "--n", "1000", "--k", "5", "--L", "paper", "--seed", "7", "--out", path});
  REQUIRE(r.code == cli::kSuccess);
  const auto text = slurp(path);
  CHECK(text.rfind("center,length\n", 0) == 0);
  CHECK(count_lines(text) == 1001);
  CHECK(r.out.find("n=1000") != std::string::npos);
  CHECK(r.out.find("seed=7") != std::string::npos);
  const auto inst = read_instance_csv(fs::path(path));
  for (const auto& iv : inst.intervals) CHECK(iv.length <= 0.16);

  // stdout mode, deterministic
  const auto a = run({"generate", "--n", "50", "--k", "5", "--seed", "3"});
  const auto b = run({"generate", "--n", "50", "--k", "5", "--seed", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 51);

  CHECK(run({"generate", "--k", "5"}).code == cli::kUsageError);
  CHECK(run({"generate", "--n", "0"}).code == cli::kUsageError);
  CHECK(run({"generate", "--n", "10", "--L", "1.5"}).code == cli::kUsageError);
  CHECK(run({"generate", "--n", "10", "--out", "/nonexistent/dir/x.csv"}).code == cli::kIoError);
  CHECK(run({"bogus"}).code == cli::kUsageError);
  CHECK(run({}).code == cli::kUsageError);
}

TEST_CASE("generate with a density file") {
  TempDir dir;
  write(dir.file("f.json"), R"({"bin_edges": [0, 0.1, 0.2], "bin_heights": [0, 10]})");
  const auto r = run({"generate", "--n", "500", "--density", dir.file("f.json"), "--k", "3", "--out", dir.file("i.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("model=extended") != std::string::npos);
  for (const auto& iv : read_instance_csv(fs::path(dir.file("i.csv"))).intervals) {
    CHECK(iv.length >= 0.1);
    CHECK(iv.length <= 0.2);
  }
  CHECK(run({"generate", "--n", "5", "--density", dir.file("missing.json")}).code == cli::kIoError);
  write(dir.file("bad.json"), R"({"bin_edges": [0, 0.1], "bin_heights": [3]})");
  CHECK(run({"generate", "--n", "5", "--density", dir.file("bad.json")}).code == cli::kUsageError);
}

TEST_CASE("color") {
  TempDir dir;
  run({"generate", "--n", "200", "--k", "4", "--seed", "1", "--out", dir.file("i.csv")});
  const auto a = run({"color", "--in", dir.file("i.csv"), "--k", "4", "--L", "paper"});
  const auto b = run({"color", dir.file("i.csv"), "--k", "4", "--L", "paper"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("center,length,color\n", 0) == 0);
  CHECK(count_lines(a.out) == 201);

  const auto r1 = run({"color", dir.file("i.csv"), "--k", "4", "--strategy", "random", "--seed", "7"});
  const auto r2 = run({"color", dir.file("i.csv"), "--k", "4", "--strategy", "random", "--seed", "7"});
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out != a.out);

  CHECK(run({"color", dir.file("i.csv"), "--strategy", "smart"}).code == cli::kUsageError);
  write(dir.file("out.csv"), "center,length\n0.5,0.1\n1.5,0.1\n");
  const auto bad = run({"color", dir.file("out.csv"), "--k", "3"});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("interval 1") != std::string::npos);
  CHECK(run({"color", dir.file("nope.csv")}).code == cli::kIoError);
}

TEST_CASE("evaluate") {
  TempDir dir;
  std::ostringstream fig;
  const auto colors = testing::figure1_coloring();
  write_colored_csv(fig, testing::figure1_instance(), Coloring{std::vector<Color>(colors.begin(), colors.end()), 2});
  write(dir.file("fig1.csv"), fig.str());

  auto r = run({"evaluate", dir.file("fig1.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.out == "n,k,m,cut,conflicts,ratio\n4,2,5,4,1,0.8\n");

  r = run({"evaluate", dir.file("fig1.csv"), "--format", "json", "--edges", dir.file("g.txt")});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["m"] == 5);
  CHECK(doc["cut"] == 4);
  CHECK(doc["conflicts"] == 1);
  CHECK(doc["ratio"].get<double>() == doctest::Approx(0.8));
  CHECK(slurp(dir.file("g.txt")) == "4 5\n0 1\n0 2\n0 3\n1 2\n2 3\n");

  write(dir.file("mono.csv"), "center,length,color\n0.2,0.2,1\n0.3,0.2,1\n0.35,0.2,1\n");
  r = run({"evaluate", dir.file("mono.csv")});
  CHECK(r.out == "n,k,m,cut,conflicts,ratio\n3,1,3,0,3,0\n");

  write(dir.file("none.csv"), "center,length,color\n0.1,0.01,1\n0.9,0.01,2\n");
  r = run({"evaluate", dir.file("none.csv")});
  CHECK(r.out.find(",NA\n") != std::string::npos);
  r = run({"evaluate", dir.file("none.csv"), "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["ratio"] == "NA");

  write(dir.file("plain.csv"), "center,length\n0.1,0.01\n");
  CHECK(run({"evaluate", dir.file("plain.csv")}).code == cli::kUsageError);
  write(dir.file("garbage.csv"), "center,length,color\n0.1,abc,1\n");
  CHECK(run({"evaluate", dir.file("garbage.csv")}).code == cli::kUsageError);
  CHECK(run({"evaluate", dir.file("fig1.csv"), "--format", "xml"}).code == cli::kUsageError);
}

TEST_CASE("verify theory") {
  const auto r = run({"verify", "--target", "theory", "--k", "5", "--L", "paper"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "k,L,p_si_given_sc,p_ov_given_sc,p_ov,p_sc_given_ov,expected_cut_ratio\n"
                 "5,0.160000,0.200000,0.054167,0.100267,0.108045,0.891955\n");
  CHECK(run({"verify", "--target", "theory", "--k", "3", "--L", "0.3"}).code == cli::kUsageError);
  CHECK(run({"verify", "--target", "nothing"}).code == cli::kUsageError);
}

TEST_CASE("verify lemma2 (reduced size)") {
  TempDir dir;
  const auto r = run({"verify", "--k", "5,10", "--n", "20000", "--threshold", "0.03", "--out", dir.file("v.csv")});
  CHECK(r.code == 0);
  const auto text = slurp(dir.file("v.csv"));
  CHECK(text.rfind(std::string(kResultCsvHeader) + "\n", 0) == 0);
  CHECK(count_lines(text) == 3);
  CHECK(text.find("\n5,0.16,all-pairs,20000,20240601,") != std::string::npos);
  // An impossible threshold fails with the verification exit code.
  CHECK(run({"verify", "--k", "5", "--n", "20000", "--threshold", "0"}).code == cli::kVerificationFailed);
  // Determinism over the full flag set.
  const auto a = run({"verify", "--k", "5", "--n", "5000", "--threshold", "1", "--workers", "4"});
  const auto b = run({"verify", "--k", "5", "--n", "5000", "--threshold", "1", "--workers", "4"});
  CHECK(a.out == b.out);
  const auto json = run({"verify", "--k", "5", "--n", "5000", "--threshold", "1", "--format", "json"});
  CHECK(nlohmann::json::parse(json.out)[0]["pass"] == true);
}

TEST_CASE("verify lemma1 and pov") {
  auto r = run({"verify", "--target", "lemma1", "--x", "0,0.33,0.5,0.8", "--trials", "200000"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 5);
  CHECK(std::count(r.err.begin(), r.err.end(), 'P') >= 4);
  r = run({"verify", "--target", "pov", "--k", "3", "--L", "1/3", "--trials", "200000"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 2);
}

TEST_CASE("maxcut") {
  TempDir dir;
  run({"generate", "--n", "12", "--k", "3", "--L", "0.5", "--seed", "4", "--out", dir.file("i.csv")});
  auto r = run({"maxcut", dir.file("i.csv"), "--k", "3", "--L", "1/3", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const double m = doc["m"].get<double>();
  CHECK(doc["exact"].get<double>() >= doc["greedy"].get<double>());
  CHECK(doc["greedy"].get<double>() >= (1.0 - 1.0 / 3.0) * m);
  CHECK(doc["exact"].get<double>() >= doc["oblivious"].get<double>());

  run({"generate", "--n", "20", "--k", "3", "--seed", "4", "--out", dir.file("big.csv")});
  r = run({"maxcut", dir.file("big.csv"), "--k", "3", "--exact"});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("refuses") != std::string::npos);
  r = run({"maxcut", dir.file("big.csv"), "--k", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",NA,") != std::string::npos);  // exact skipped

  write(dir.file("empty.csv"), "center,length\n0.1,0.01\n0.5,0.01\n0.9,0.01\n");
  r = run({"maxcut", dir.file("empty.csv"), "--k", "3"});
  CHECK(r.out == "n,k,m,exact,greedy,oblivious\n3,3,0,0,0,0\n");
}

TEST_CASE("length bound parsing") {
  CHECK(cli::parse_length_bound("paper", 5) == doctest::Approx(0.16));
  CHECK(cli::parse_length_bound("4/25", 5) == doctest::Approx(0.16));
  CHECK(cli::parse_length_bound("0.25", 5) == 0.25);
  CHECK_THROWS(cli::parse_length_bound("abc", 5));
  CHECK_THROWS(cli::parse_length_bound("2", 5));
}

TEST_CASE("binary exit codes") {
  CHECK(std::system(STACKCUT_CLI_PATH " verify --target theory --k 5 > /dev/null") == 0);
  const int status = std::system(STACKCUT_CLI_PATH " generate > /dev/null 2>&1");
  CHECK(WEXITSTATUS(status) == 1);
}
