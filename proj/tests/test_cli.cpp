#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ighit/cli.hpp"
#include "ighit/inverse_process.hpp"
#include "ighit/serialize.hpp"
#include "ighit/verify.hpp"
#include "oracles.hpp"

using namespace ighit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ighit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) {
    std::istringstream h(line);
    for (std::string cell; std::getline(h, cell, ',');) header->push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::vector<double> values;
    for (std::string cell; std::getline(row, cell, ',');) values.push_back(std::stod(cell));
    rows.push_back(values);
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ighit_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("format_double round-trips with 17 significant digits") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(0.5).find(',') == std::string::npos);
}

TEST_CASE("csv and json tables") {
  const Table t{{"x", "density"}, {{0.0, 1.0}, {0.5, 0.25}}};
  const std::string csv = to_csv(t);
  CHECK(csv.rfind("x,density\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(parse_csv(csv).size() == 2);
  const auto j = to_json(t);
  CHECK(j["columns"][1] == "density");
  const std::string dumped = dump_json(j);
  CHECK(dump_json(nlohmann::json::parse(dumped)) == dumped);
  CHECK(dumped.back() == '\n');
}

TEST_CASE("non-finite values survive json serialization") {
  ResidualReport rep;
  rep.equation = "pseudo-lt";
  rep.x = {1.0};
  rep.t = {1.0};
  rep.levels.push_back({0.1, 0.1, {0.0}, 0.0, 0.0, 1.0});
  rep.levels.push_back({0.05, 0.05, {0.0}, 0.0, 0.0, 1.0});
  rep.refinement_ratio = std::nan("");
  const std::string text = dump_json(to_json(rep));
  CHECK(text.find("null") == std::string::npos);
  CHECK(dump_json(nlohmann::json::parse(text)) == text);
}

TEST_CASE("atomic write leaves no temporary file") {
  const fs::path dir = scratch_dir("atomic");
  atomic_write(dir / "a.txt", "hello\n");
  CHECK(slurp(dir / "a.txt") == "hello\n");
  CHECK_FALSE(fs::exists(dir / "a.txt.tmp"));
}

TEST_CASE("svg plot") {
  const std::string svg = svg_plot({{"g", {0, 1, 2}, {0, 1, 3}, true}, {"h", {0, 1}, {0, 2}, false}}, "t", "x", "y");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("help lists every flag and exits 0") {
  const auto r = run_cli({"density", "--help"});
  CHECK(r.code == 0);
  for (const char* flag : {"--delta", "--gamma", "--t", "--x", "--format", "--out", "--route", "--prefactor"})
    CHECK(r.out.find(flag) != std::string::npos);
  const auto top = run_cli({"--help"});
  CHECK(top.code == 0);
  for (const char* cmd : {"density", "cdf", "moments", "tail", "lt", "paths", "subordinated", "pde-check", "stable", "verify"})
    CHECK(top.out.find(cmd) != std::string::npos);
}

TEST_CASE("usage errors exit 2 and name the flag") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"density", "--bogus", "1"}).code == 2);
  CHECK(run_cli({"density", "--format", "xml"}).code == 2);
  const auto dt = run_cli({"paths", "--dt", "0"});
  CHECK(dt.code == 2);
  CHECK(dt.err.find("--dt") != std::string::npos);
  const auto delta = run_cli({"density", "--delta", "-1"});
  CHECK(delta.code == 2);
  CHECK(delta.err.find("--delta") != std::string::npos);
  const auto grid = run_cli({"density", "--x", "3:0:0.1"});
  CHECK(grid.code == 2);
  CHECK(grid.err.find("--x") != std::string::npos);
  CHECK(run_cli({"verify", "--only", "nonsense"}).code == 2);
  CHECK(run_cli({"paths", "--seed", "-4"}).code == 2);
}

TEST_CASE("density command reproduces the half-normal case") {
  const auto r = run_cli({"density", "--delta", "1", "--gamma", "0", "--t", "1", "--x", "0:3:0.1"});
  REQUIRE(r.code == 0);
  std::vector<std::string> header;
  const auto rows = parse_csv(r.out, &header);
  CHECK(header == std::vector<std::string>{"x", "t", "density"});
  CHECK(rows.size() == 31);
  for (const auto& row : rows) CHECK(row[2] == doctest::Approx(oracle::half_normal_density(row[0], 1.0)).epsilon(1e-8));
}

TEST_CASE("moments command gives the corrected closed forms") {
  const auto r = run_cli({"moments", "--delta", "1", "--gamma", "1", "--t", "1", "--q", "1,2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][2] == doctest::Approx(hit_mean(1.0, {1.0, 1.0})).epsilon(1e-15));
  CHECK(rows[1][2] == doctest::Approx(hit_second_moment(1.0, {1.0, 1.0})).epsilon(1e-15));
  const auto half = run_cli({"moments", "--gamma", "0", "--q", "0.5"});
  REQUIRE(half.code == 0);
  CHECK(parse_csv(half.out)[0][2] == doctest::Approx(std::pow(2.0, 0.25) * std::tgamma(0.75) / std::sqrt(oracle::pi)).epsilon(1e-5));
}

TEST_CASE("json output carries metadata") {
  const auto r = run_cli({"cdf", "--format", "json", "--x", "0.5,1"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "cdf");
  CHECK(j["table"]["rows"].size() == 2);
  CHECK(j.contains("spec"));
  CHECK(j.contains("version"));
}

TEST_CASE("remaining table commands") {
  CHECK(run_cli({"tail", "--t", "1"}).code == 0);
  CHECK(run_cli({"lt", "--variable", "time", "--s", "1,2"}).code == 0);
  const auto space = run_cli({"lt", "--variable", "space", "--mu", "1", "--gamma", "0"});
  REQUIRE(space.code == 0);
  CHECK(parse_csv(space.out)[0][2] == doctest::Approx(std::exp(0.5) * std::erfc(1.0 / std::sqrt(2.0))).epsilon(1e-8));
  CHECK(run_cli({"lt", "--variable", "space", "--mu", "0.5"}).code == 2);
  const auto sub = run_cli({"subordinated", "--x", "-1,1"});
  REQUIRE(sub.code == 0);
  const auto rows = parse_csv(sub.out);
  CHECK(rows[0][2] == doctest::Approx(rows[1][2]));
  const auto st = run_cli({"stable", "--beta", "0.5", "--x", "1"});
  REQUIRE(st.code == 0);
  CHECK(parse_csv(st.out)[0][2] == doctest::Approx(std::exp(-0.25) / std::sqrt(oracle::pi)).epsilon(1e-10));
  CHECK(run_cli({"stable", "--beta", "1.5"}).code == 2);
}

TEST_CASE("paths command is deterministic and writes both files") {
  const fs::path a = scratch_dir("paths_a");
  const fs::path b = scratch_dir("paths_b");
  const std::vector<std::string> common{"paths", "--delta", "1", "--gamma", "1", "--T", "5", "--dt", "0.001", "--seed", "42", "--svg"};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.string()});
  REQUIRE(run_cli(args_a).code == 0);
  REQUIRE(run_cli(args_b).code == 0);
  for (const char* f : {"g_path.csv", "h_path.csv", "g_path.svg", "h_path.svg"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  std::vector<std::string> header;
  const auto h = parse_csv(slurp(a / "h_path.csv"), &header);
  CHECK(header == std::vector<std::string>{"t", "value"});
  CHECK(h.size() == 5001);
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i][1] >= h[i - 1][1]);
}

TEST_CASE("pde-check reports second-order convergence") {
  const auto r = run_cli({"pde-check", "--eq", "hitting", "--refine", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["levels"].size() == 3);
  CHECK(j["report"]["refinement_ratio"].get<double>() == doctest::Approx(4.0).epsilon(0.1));
  const auto csv = run_cli({"pde-check", "--eq", "ig", "--refine", "1"});
  REQUIRE(csv.code == 0);
  std::vector<std::string> header;
  parse_csv(csv.out, &header);
  CHECK(header.size() == 4);
  CHECK(run_cli({"pde-check", "--eq", "3.1"}).code == 2);
}

TEST_CASE("verify --only M1 confirms the mean function") {
  const fs::path dir = scratch_dir("verify");
  const auto r = run_cli({"verify", "--only", "M1", "--out", (dir / "report.json").string()});
  CHECK(r.code == 0);
  const std::string text = slurp(dir / "report.json");
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j["records"].size() == 1);
  CHECK(j["records"][0]["id"] == "M1");
  CHECK(j["records"][0]["verdict"] == "confirmed");
  CHECK(j["records"][0]["oracles"].size() >= 3);
  CHECK(dump_json(nlohmann::json::parse(text)) == text);
}

TEST_CASE("verification report structure") {
  VerifyOptions options;
  options.only = {"M2", "erf-integral-identity", "tail-bound"};
  const VerificationReport rep = run_verification(options);
  REQUIRE(rep.records.size() == 3);
  const auto verdict = [&](const std::string& id) {
    for (const auto& r : rep.records)
      if (r.id == id) return r.verdict;
    return Verdict::failed;
  };
  CHECK(verdict("M2") == Verdict::corrected);
  CHECK(verdict("erf-integral-identity") == Verdict::corrected);
  CHECK(verdict("tail-bound") == Verdict::bounded_only);
  CHECK(rep.all_passed());
  CHECK(to_string(Verdict::bounded_only) == "bounded-only");
  CHECK(verification_ids().size() == 21);
}

TEST_CASE("numeric profile from the environment") {
  setenv("IGHIT_NUMERIC_PROFILE", "nonsense", 1);
  CHECK(run_cli({"cdf", "--x", "1"}).code == 2);
  setenv("IGHIT_NUMERIC_PROFILE", "fast", 1);
  const auto r = run_cli({"cdf", "--x", "1", "--format", "json"});
  unsetenv("IGHIT_NUMERIC_PROFILE");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["spec"]["rel_tol"].get<double>() == NumericSpec::fast().rel_tol);
}
