#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hlpg/cli.hpp"
#include "util.hpp"

using namespace hlpg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "hlpg_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::vector<nlohmann::json> records(const fs::path& p) {
  std::vector<nlohmann::json> out;
  std::ifstream f(p);
  for (std::string line; std::getline(f, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == kUsage);
  CHECK(cli({"solve"}).code == kUsage);
  CHECK(cli({"solve", scratch("missing.hlpg").string()}).code == kUsage);
  CHECK(cli({"bench", "xx", "--n", "2"}).code == kUsage);
  CHECK(cli({"bench", "cs", "--n", "0"}).code == kUsage);
  CHECK(cli({"bench", "cs", "--n", "2", "--approach", "magic"}).code == kUsage);
  CHECK(cli({"--help"}).code == kOk);
}

TEST_CASE("model errors exit with 3") {
  fs::path p = scratch("bad.hlpg");
  std::ofstream(p) << "game B\nclass C = { c }\nplace P wat : ( C )\n";
  Run r = cli({"solve", p.string()});
  CHECK(r.code == kModel);
  CHECK(r.err.find("line 3") != std::string::npos);

  fs::path two = scratch("two_env.hlpg");
  std::ofstream(two) << "game B\nclass C = { c d }\nplace P env : ( C ) init { ( c ) ( d ) }\n";
  CHECK(cli({"solve", two.string()}).code == kModel);
}

TEST_CASE("node cap exits with 4") {
  CHECK(cli({"bench", "cs", "--n", "3", "--node-cap", "100"}).code == kCap);
}

TEST_CASE("solve prints the verdict and writes outputs") {
  fs::path game = scratch("cm22.hlpg"), stats = scratch("s.jsonl");
  CHECK(cli({"bench", "cm", "--m", "2", "--o", "2", "--emit", game.string()}).code == kOk);
  Run r = cli({"solve", game.string(), "--approach", "explicit", "--stats", stats.string()});
  CHECK(r.code == kOk);
  CHECK(r.out == "UNREALIZABLE\n");
  auto rec = records(stats);
  REQUIRE(rec.size() == 1);
  CHECK(rec[0]["realizable"] == false);
  CHECK(rec[0]["approach"] == "explicit");
  for (const char* k : {"instance", "nodes", "edges", "accepting", "symmetries", "build_ms", "solve_ms",
                        "translate_ms", "total_ms"})
    CHECK(rec[0].contains(k));
  CHECK(rec[0]["total_ms"].get<double>() >= rec[0]["build_ms"].get<double>() + rec[0]["solve_ms"].get<double>());

  fs::path cs = scratch("cs2.hlpg"), text = scratch("st.txt"), dot = scratch("arena.dot");
  std::ofstream(cs) << cs_source(2);
  r = cli({"solve", cs.string(), "--strategy-out", text.string(), "--arena-out", dot.string(), "--validate",
           "--dump-symmetries"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("()\n(c1 c2)\n") == 0);
  CHECK(r.out.find("REALIZABLE\n") != std::string::npos);
  CHECK(r.out.find("strategy valid") != std::string::npos);
  CHECK(fs::file_size(text) > 0);
  CHECK(fs::file_size(dot) > 0);
}

TEST_CASE("bench records one line per approach") {
  fs::path stats = scratch("b.jsonl");
  Run r = cli({"bench", "cs", "--n", "2", "--approach", "canonical", "membership", "--stats", stats.string()});
  CHECK(r.code == kOk);
  auto rec = records(stats);
  REQUIRE(rec.size() == 2);
  CHECK(rec[0]["nodes"] == rec[1]["nodes"]);
  CHECK(rec[0]["edges"] == rec[1]["edges"]);
  CHECK(rec[0]["instance"] == "CS(2)");
  CHECK(rec[0]["symmetries"] == 2);

  r = cli({"bench", "dw", "--n", "2", "--approach", "explicit", "--check-orbits", "50", "--seed", "3"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("orbit check: 50/50 ok") != std::string::npos);
}

TEST_CASE("emitted games parse back identically") {
  fs::path p = scratch("cm21.hlpg");
  CHECK(cli({"bench", "cm", "--m", "2", "--o", "1", "--emit", p.string()}).code == kOk);
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(structurally_equal(parse_game(s.str()), gen_cm(2, 1)));
}

TEST_CASE("dumped representations") {
  Run r = cli({"bench", "cs", "--n", "1", "--dump-reps"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("#0 [top]\ncard: Z1^1=1 Z2^1=1\nstatic: Z1^1=1 Z2^1=1\n") == 0);
}
