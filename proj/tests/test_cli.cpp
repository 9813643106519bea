#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "knlab/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "knlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = knlab::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json doc(const Run& r) { return json::parse(r.out); }

json without_metadata(json j) {
  j.erase("metadata");
  return j;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("knlab_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = path / name;
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
  }
};

}  // namespace

TEST_CASE("verify") {
  TempDir tmp;
  const auto good = tmp.file("n4.part", "n=4 labels=ZSTSTT\n");
  auto r = run({"verify", good});
  REQUIRE(r.code == 0);
  const auto res = doc(r)["report"]["results"][0];
  CHECK(res["i_st"] == 4);
  CHECK(res["i_zt"] == 2);
  CHECK(res["i_zs"] == 2);
  CHECK(res["holds"] == true);
  CHECK(res["p"] == 1);
  CHECK(res["q"] == 0);
  CHECK(res.contains("diagnostics"));
  CHECK(res["structure"]["all_facts_hold"] == true);
  CHECK(doc(r)["config"]["command"] == "verify");

  const auto trunc = tmp.file("bad.part", "n=4 labels=ZSSTTT\nn=4 labels=ZSS\n");
  r = run({"verify", trunc});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("offset 3") != std::string::npos);

  CHECK(run({"verify", tmp.file("missing.part")}).code == 2);

  r = run({"verify", good, "--bridge", "--format", "jsonl"});
  CHECK(r.code == 0);
  CHECK(doc(r)["report"]["results"][0]["bridge"]["k"] == 2);
}

TEST_CASE("sharpness") {
  TempDir tmp;
  auto r = run({"sharpness", "--n", "6"});
  REQUIRE(r.code == 0);
  const auto rep = doc(r)["report"];
  CHECK(rep["i_st"] == 6);
  CHECK(rep["i_zs"] == 8);
  CHECK(rep["violates_min_bound"] == true);

  CHECK(run({"sharpness", "--n", "4"}).code == 2);

  const auto part = tmp.file("s5.part");
  REQUIRE(run({"sharpness", "--n", "5", "--emit-partition", part}).code == 0);
  r = run({"verify", part});
  REQUIRE(r.code == 0);
  const auto res = doc(r)["report"]["results"][0];
  CHECK(res["mode"] == "general");
  CHECK(res.contains("note"));
  CHECK(res["sharpness"]["violates_min_bound"] == true);
  CHECK(res["sharpness"]["i_st"] == 4);
}

TEST_CASE("search") {
  auto r = run({"search", "--n", "5", "--mode", "exhaustive"});
  REQUIRE(r.code == 0);
  CHECK(doc(r)["report"]["partitions_checked"] == 11520);
  CHECK(doc(r)["report"]["violations"].empty());

  const auto a = run({"search", "--n", "10", "--mode", "random", "--samples", "100000", "--seed", "7", "--format", "jsonl"});
  const auto b = run({"search", "--n", "10", "--mode", "random", "--samples", "100000", "--seed", "7", "--format", "jsonl",
                      "--workers", "3"});
  REQUIRE(a.code == 0);
  CHECK(without_metadata(doc(a)) == without_metadata(doc(b)));
  CHECK(doc(a)["config"]["seed"] == 7);

  CHECK(run({"search", "--n", "9"}).code == 2);
  CHECK(run({"search", "--n", "5", "--mode", "sideways"}).code == 2);
  CHECK(run({"search", "--n", "5", "--mode", "random"}).code == 2);

  r = run({"search", "--n", "10", "--mode", "profile", "--p", "4", "--q", "4"});
  CHECK(r.code == 0);
  CHECK(doc(r)["report"]["vacuous"] == true);
}

TEST_CASE("search checkpoint resume through the command line") {
  TempDir tmp;
  const std::vector<std::string> base{"search", "--n", "11", "--mode", "profile", "--p", "3", "--q", "2"};
  const auto whole = run(base);
  REQUIRE(whole.code == 0);

  auto args = base;
  for (const char* extra : {"--checkpoint", "", "--max-units", "5"}) args.emplace_back(extra);
  args[args.size() - 3] = tmp.file("ck.json");
  Run last;
  int rounds = 0;
  do {
    last = run(args);
    REQUIRE(last.code == 0);
    ++rounds;
    REQUIRE(rounds < 10000);
  } while (doc(last)["report"]["complete"] == false);
  CHECK(rounds > 1);
  auto want = doc(whole)["report"];
  auto got = doc(last)["report"];
  CHECK(got == want);
}

TEST_CASE("jsonl output appends") {
  TempDir tmp;
  const auto out = tmp.file("ledger.jsonl");
  for (int i = 0; i < 2; ++i)
    REQUIRE(run({"search", "--n", "4", "--format", "jsonl", "--output", out}).code == 0);
  std::ifstream in(out);
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(!std::getline(in, l3));
  CHECK(without_metadata(json::parse(l1)) == without_metadata(json::parse(l2)));
}

TEST_CASE("orient") {
  TempDir tmp;
  auto r = run({"orient", "--n", "4", "--enumerate", "--k", "2"});
  REQUIRE(r.code == 0);
  CHECK(doc(r)["report"]["refuted"] == 0);
  CHECK(doc(r)["report"]["certified"] == doc(r)["report"]["orientations"]);
  CHECK(doc(r)["report"]["all_certificates_validated"] == true);

  r = run({"orient", "--n", "5", "--count", "100", "--seed", "9", "--k", "3", "--no-paths"});
  REQUIRE(r.code == 0);
  CHECK(doc(r)["report"]["certified"] == 100);

  CHECK(run({"orient", "--n", "5", "--count", "1", "--k", "7"}).code == 2);
  CHECK(run({"orient"}).code == 2);

  // All-up octahedron: a source vertex, refuted at the default k = 2.
  const auto file = tmp.file("up.orient", "n=4\n000000000000\n");
  r = run({"orient", "--input", file});
  CHECK(r.code == 1);
  const auto res = doc(r)["report"]["results"][0];
  CHECK(res["certificate"]["status"] == "refuted");
  CHECK(res["bits"] == "000000000000");
  CHECK(res["validated"] == true);

  const auto dir = (tmp.path / "emitted").string();
  REQUIRE(run({"orient", "--n", "5", "--count", "2", "--emit-orientations", dir}).code == 0);
  CHECK(run({"orient", "--input", (fs::path(dir) / "orientation_1.txt").string()}).code == 0);

  CHECK(run({"orient", "--input", tmp.file("short.orient", "n=4\n0101\n")}).code == 2);
}

TEST_CASE("expansion") {
  auto r = run({"expansion", "--n", "5", "--k", "3", "--size-cap", "2"});
  REQUIRE(r.code == 0);
  CHECK(doc(r)["report"]["all_satisfied"] == true);

  r = run({"expansion", "--n", "4", "--k", "2", "--size-cap", "1"});
  REQUIRE(r.code == 0);
  for (const auto& rec : doc(r)["report"]["records"]) {
    CHECK(rec["neighbourhood"] == 4);
    CHECK(rec["satisfied"] == true);
  }
  CHECK(run({"expansion", "--n", "5", "--k", "3", "--size-cap", "0"}).code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"search"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"sharpness", "--n", "6", "--format", "yaml"}).code == 2);
  const auto t = run({"sharpness", "--n", "6", "--format", "text"});
  CHECK(t.code == 0);
  CHECK(t.out.find("I_ST=6") != std::string::npos);
}
