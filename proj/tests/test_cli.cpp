#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "sparsemaps/cli.hpp"

using namespace sparsemaps;
using json = nlohmann::json;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sparsemaps");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string tables_dir() {
  const char* env = std::getenv("SPARSEMAPS_TABLES");
  return env ? env : "tables/small";
}

// Runs the installed binary through the shell; returns exit status and stdout.
std::pair<int, std::string> shell(const std::string& args) {
  const char* bin = std::getenv("SPARSEMAPS_BIN");
  REQUIRE(bin != nullptr);
  std::string command = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "sparsemaps_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("count prints the one-face torus count") {
  auto r = invoke({"count", "--n", "3", "--faces", "1", "--genus", "1", "--table", tables_dir()});
  CHECK(r.status == exit_ok);
  CHECK(r.out == "10\n");
  auto bin = shell("count --n 3 --faces 1 --genus 1 --table " + tables_dir());
  CHECK(bin.first == 0);
  CHECK(bin.second == "10\n");
}

TEST_CASE("count closed forms and diagnostics") {
  CHECK(invoke({"count", "--n", "4", "--faces", "1", "--genus", "0"}).out == "14\n");
  // Planar maps with 2 edges: 9 in total, 2 of them with one face.
  CHECK(invoke({"count", "--n", "2", "--faces", "2", "--genus", "0"}).out == "5\n");
  auto csv = invoke({"count", "--n", "10", "--faces", "3", "--genus", "0", "--format", "csv"});
  REQUIRE(csv.status == exit_ok);
  CHECK(csv.out.rfind("# sparsemaps ", 0) == 0);
  CHECK(csv.out.find("\nn,faces,genus,defect,") != std::string::npos);
  CHECK(csv.out.find(",total,") != std::string::npos);
  CHECK(csv.out.find("ClosedForm+Oracle") != std::string::npos);
}

TEST_CASE("sample output is deterministic") {
  std::vector<std::string> args = {"sample", "--n", "2", "--faces", "1", "--genus", "1", "--count", "5", "--seed", "7"};
  auto a = invoke(args), b = invoke(args);
  REQUIRE(a.status == exit_ok);
  CHECK(a.out == b.out);
  auto doc = json::parse(a.out);
  CHECK(doc["samples"].size() == 5);
  CHECK(doc["version"] == tool_version());
  CHECK(doc["config"]["seed"] == 7);
  CHECK(doc["config"]["subcommand"] == "sample");

  auto x = shell("sample --n 2 --faces 1 --genus 1 --count 5 --seed 7");
  auto y = shell("sample --n 2 --faces 1 --genus 1 --count 5 --seed 7");
  CHECK(x.first == 0);
  CHECK(x.second == y.second);
  CHECK(x.second == a.out);
}

TEST_CASE("thread count does not change samples") {
  auto one = invoke({"sample", "--n", "200", "--faces", "3", "--genus", "0", "--count", "12", "--seed", "3"});
  auto four = invoke(
      {"sample", "--n", "200", "--faces", "3", "--genus", "0", "--count", "12", "--seed", "3", "--threads", "4"});
  REQUIRE(one.status == exit_ok);
  REQUIRE(four.status == exit_ok);
  CHECK(json::parse(one.out)["samples"] == json::parse(four.out)["samples"]);
  auto other = invoke({"sample", "--n", "200", "--faces", "3", "--genus", "0", "--count", "12", "--seed", "4"});
  CHECK(json::parse(other.out)["samples"] != json::parse(one.out)["samples"]);
}

TEST_CASE("decomposition documents match decompose of sampled maps") {
  auto maps_file = scratch("maps.json");
  std::vector<std::string> base = {"sample", "--n", "60", "--faces", "4", "--genus", "0", "--count", "6", "--seed", "11"};
  auto maps_args = base;
  maps_args.insert(maps_args.end(), {"--output", maps_file.string()});
  REQUIRE(invoke(maps_args).status == exit_ok);
  auto dec_args = base;
  dec_args.insert(dec_args.end(), {"--format", "decomposition"});
  auto direct = invoke(dec_args);
  REQUIRE(direct.status == exit_ok);
  auto derived = invoke({"decompose", "--input", maps_file.string()});
  REQUIRE(derived.status == exit_ok);
  CHECK(json::parse(direct.out)["samples"] == json::parse(derived.out)["samples"]);
}

TEST_CASE("stats and csv agree on stored samples") {
  auto file = scratch("torus.json");
  REQUIRE(invoke({"sample", "--n", "40", "--faces", "1", "--genus", "1", "--count", "20", "--seed", "5", "--table",
                  tables_dir(), "--output", file.string()})
              .status == exit_ok);
  auto stats = invoke({"stats", "--input", file.string()});
  REQUIRE(stats.status == exit_ok);
  CHECK(stats.out.find("\nquantity,count,mean,variance,min,max\n") != std::string::npos);
  CHECK(stats.out.find("\nedges,20,40,0,40,40\n") != std::string::npos);
  CHECK(stats.out.find("\ngenus,20,1,0,1,1\n") != std::string::npos);

  auto csv = invoke({"sample", "--n", "40", "--faces", "1", "--genus", "1", "--count", "20", "--seed", "5", "--table",
                     tables_dir(), "--format", "csv"});
  REQUIRE(csv.status == exit_ok);
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# sparsemaps", 0) == 0);
  std::getline(lines, line);
  CHECK(line == "index,edges,faces,genus,vertices,defect,kernel_edges,core_edges,loops,root_degree");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",40,1,1,39,") != std::string::npos);
  }
  CHECK(rows == 20);
}

TEST_CASE("dot export highlights the core") {
  auto r = invoke({"sample", "--n", "30", "--faces", "2", "--genus", "1", "--count", "1", "--seed", "2", "--mode",
                   "exact", "--format", "dot", "--table", tables_dir()});
  if (r.status == exit_ok) {
    CHECK(r.out.find("graph sample0 {") != std::string::npos);
    CHECK(r.out.find("color=red") != std::string::npos);
  } else {
    CHECK(r.status == exit_unsupported);
  }
  auto tree = invoke({"sample", "--n", "8", "--faces", "1", "--genus", "0", "--seed", "2", "--format", "dot"});
  REQUIRE(tree.status == exit_ok);
  CHECK(tree.out.find("color=red") == std::string::npos);
  CHECK(tree.out.find("penwidth=3") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"sample", "--n", "2", "--faces", "1", "--genus", "1"}).status == exit_usage);
  CHECK(invoke({"frobnicate"}).status == exit_usage);
  CHECK(invoke({"count", "--n", "2", "--faces", "1", "--genus", "5"}).status == exit_usage);
  CHECK(invoke({"sample", "--n", "5", "--seed", "1", "--mode", "sideways"}).status == exit_usage);
  CHECK(invoke({"decompose", "--input", scratch("absent.json").string()}).status == exit_usage);
  CHECK(invoke({"verify", "--suite", "no-such-suite", "--seed", "1"}).status == exit_usage);
  // No exact counts for two-face genus-one kernels with six edges.
  CHECK(invoke({"count", "--n", "20", "--faces", "2", "--genus", "1"}).status == exit_unsupported);
  CHECK(invoke({"sample", "--n", "50", "--faces", "1", "--genus", "2", "--seed", "1"}).status == exit_unsupported);
  CHECK(invoke({"verify", "--suite", "oracle-identity", "--seed", "1"}).status == exit_ok);
  auto failing = invoke({"verify", "--suite", "phi-ratio", "--seed", "1"});
  CHECK(failing.status == exit_test_failure);
  CHECK(failing.out.rfind("# sparsemaps", 0) == 0);
  CHECK(failing.out.find("phi-ratio,phi_ratio,") != std::string::npos);
  CHECK(shell("sample --n 2").first == exit_usage);
  CHECK(shell("verify --suite phi-ratio --seed 1").first == exit_test_failure);
}

TEST_CASE("table subcommand writes a loadable table") {
  auto dir = scratch("table");
  auto r = invoke({"table", "--oracle", "3", "--output", dir.string()});
  REQUIRE(r.status == exit_ok);
  CHECK(std::filesystem::exists(dir / "defects.json"));
  CHECK(invoke({"count", "--n", "3", "--faces", "1", "--genus", "1", "--table", dir.string()}).out == "10\n");
  auto mc = invoke({"table", "--n", "100", "--faces", "1", "--genus", "3", "--samples", "300", "--seed", "4",
                    "--output", (dir / "mc.json").string()});
  REQUIRE(mc.status == exit_ok);
  std::ifstream in(dir / "mc.json");
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str().find("MonteCarlo") != std::string::npos);
}
