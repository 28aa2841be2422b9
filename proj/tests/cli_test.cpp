#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using namespace domineering;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("domineering_cli_test_" + name);
  fs::remove(p);
  return p;
}

bool contains(const std::string& s, const std::string& what) {
  return s.find(what) != std::string::npos;
}

}  // namespace

TEST_CASE("solve examples") {
  const Invocation a = invoke({"solve", "--rows", "5", "--cols", "5", "--no-cache"});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "winner: 2 (Horizontal)"));
  CHECK(contains(a.out, "nodes: "));

  const Invocation b = invoke({"solve", "--rows", "2", "--cols", "2", "--to-move", "H", "--no-cache"});
  CHECK(contains(b.out, "winner: 1 (Horizontal)"));

  const Invocation c = invoke({"solve", "--rows", "4", "--cols", "4", "--no-knowledge", "--tt-scheme",
                     "twobig", "--no-cache"});
  CHECK(contains(c.out, "winner: 1 (Vertical)"));
}

TEST_CASE("outcome examples") {
  CHECK(contains(invoke({"outcome", "--rows", "5", "--cols", "5", "--no-cache"}).out, "5x5: P\n"));
  CHECK(contains(invoke({"outcome", "--rows", "3", "--cols", "1", "--no-cache"}).out, "3x1: V\n"));
  const Invocation r = invoke({"outcome", "--rows", "1", "--cols", "1", "--no-cache"});
  CHECK(contains(r.out, "1x1: P\n"));
  CHECK(contains(r.out, "Vertical starts: 2 (Horizontal)"));
  CHECK(contains(r.out, "Horizontal starts: 2 (Vertical)"));
}

TEST_CASE("exit codes") {
  CHECK(invoke({"solve", "--rows", "6", "--cols", "6", "--node-limit", "20", "--no-cache"}).code == 3);
  CHECK(contains(invoke({"solve", "--rows", "6", "--cols", "6", "--node-limit", "20", "--no-cache"}).out,
                 "undecided"));
  CHECK(invoke({"outcome", "--rows", "6", "--cols", "6", "--node-limit", "20", "--no-cache"}).code == 3);
  CHECK(invoke({"solve", "--rows", "16", "--cols", "17", "--no-cache"}).code == 2);
  CHECK(invoke({"solve", "--rows", "2"}).code == 2);
  CHECK(invoke({"solve", "--rows", "2", "--cols", "2", "--tt-scheme", "lru"}).code == 2);
  CHECK(invoke({"solve", "--rows", "2", "--cols", "2", "--tt-bits", "40"}).code == 2);
  CHECK(invoke({"solve", "--rows", "2", "--cols", "2", "--to-move", "X", "--no-cache"}).code == 2);
  CHECK(invoke({"solve", "--rows", "2", "--cols", "2", "--seed", "0xzz", "--no-cache"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"landscape", "--base", "/nonexistent/base.csv"}).code == 2);
}

TEST_CASE("json output is one record with exactly the record fields") {
  const Invocation r = invoke({"solve", "--rows", "3", "--cols", "4", "--json", "--no-cache", "--seed", "0x10",
                     "--order", "rowmajor", "--tt-bits", "12"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    const auto j = nlohmann::json::parse(line);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"cols", "config", "elapsed_ms", "nodes", "rows",
                                           "timestamp", "to_move", "winner"});
    std::vector<std::string> config_keys;
    for (const auto& [k, v] : j["config"].items()) config_keys.push_back(k);
    std::sort(config_keys.begin(), config_keys.end());
    CHECK(config_keys ==
          std::vector<std::string>{"knowledge", "order", "seed", "tt", "tt_bits", "tt_scheme"});
    CHECK(j["config"]["seed"] == 16);
    CHECK(j["config"]["order"] == "rowmajor");
    CHECK(j["config"]["tt_bits"] == 12);
    const cli::ResultRecord rec = cli::parse_json_line(line);
    CHECK(rec.rows == 3);
    CHECK(rec.cols == 4);
  }
  CHECK(count == 1);
}

TEST_CASE("cache round trip") {
  cli::ResultRecord r;
  r.rows = 7;
  r.cols = 5;
  r.to_move = Player::Horizontal;
  r.winner = Player::Vertical;
  r.nodes = 123456789012ULL;
  r.elapsed_ms = 12.625;
  r.config.tt_bits = 24;
  r.config.tt_scheme = "twobig";
  r.config.knowledge = false;
  r.config.tt = true;
  r.config.order = "rowmajor";
  r.config.seed = 0xFFFF'FFFF'FFFF'FFFFULL;
  r.timestamp = "2020-01-02T03:04:05Z";
  CHECK(cli::parse_json_line(cli::to_json_line(r)) == r);

  const fs::path path = scratch("roundtrip.jsonl");
  const cli::ResultCache cache(path);
  cache.append(r);
  {
    std::ofstream f(path, std::ios::app);
    f << "not json\n";
  }
  cli::ResultRecord r2 = r;
  r2.nodes = 1;
  cache.append(r2);
  const auto all = cache.load();
  REQUIRE(all.size() == 2);
  CHECK(all[0] == r);
  CHECK(cache.find({7, 5}, Player::Horizontal, r.config)->nodes == 1);
  CHECK_FALSE(cache.find({5, 7}, Player::Horizontal, r.config).has_value());
  CHECK_THROWS_AS(cli::parse_json_line("{\"rows\": 1}"), std::invalid_argument);
  fs::remove(path);
}

TEST_CASE("solve writes to the cache from flag or environment") {
  const fs::path flag_path = scratch("flag.jsonl");
  CHECK(invoke({"solve", "--rows", "3", "--cols", "3", "--cache", flag_path.string()}).code == 0);
  auto records = cli::ResultCache(flag_path).load();
  REQUIRE(records.size() == 1);
  CHECK(records[0].winner == Player::Vertical);
  CHECK(records[0].config == cli::fingerprint_of(SolveConfig{}));

  const fs::path env_path = scratch("env.jsonl");
  ::setenv(cli::kCacheEnv, env_path.c_str(), 1);
  CHECK(cli::default_cache_path() == env_path);
  CHECK(invoke({"solve", "--rows", "2", "--cols", "3"}).code == 0);
  CHECK(invoke({"solve", "--rows", "2", "--cols", "3", "--no-cache"}).code == 0);
  CHECK(invoke({"outcome", "--rows", "2", "--cols", "3"}).code == 0);
  ::unsetenv(cli::kCacheEnv);
  CHECK(cli::ResultCache(env_path).load().size() == 3);

  fs::remove(flag_path);
  fs::remove(env_path);
}

TEST_CASE("rule set flags") {
  const Invocation basic = invoke({"solve", "--rows", "5", "--cols", "5", "--basic", "--no-cache"});
  CHECK(basic.code == 0);
  CHECK(contains(basic.out, "winner: 2 (Horizontal)"));
  CHECK(contains(basic.out, "screened: 0"));
  CHECK(invoke({"solve", "--rows", "4", "--cols", "5", "--rules", "basic", "--no-cache"}).code == 0);
  CHECK(invoke({"solve", "--rows", "4", "--cols", "5", "--rules", "magic"}).code == 2);

  const fs::path path = scratch("rules.jsonl");
  CHECK(invoke({"solve", "--rows", "3", "--cols", "3", "--basic", "--cache", path.string()}).code == 0);
  CHECK(invoke({"outcome", "--rows", "3", "--cols", "3", "--rules", "basic", "--cache", path.string()})
            .code == 0);
  CHECK(cli::ResultCache(path).load().empty());
  fs::remove(path);
}

TEST_CASE("solve from a diagram with bounds") {
  const fs::path path = scratch("diagram.txt");
  {
    std::ofstream f(path);
    f << ".#.\n.#.\n.#.\n";
  }
  const Invocation r = invoke({"solve", "--diagram", path.string(), "--show-bounds", "--no-cache"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "safe_lower_v 2"));
  CHECK(contains(r.out, "winner: 1 (Vertical)"));
  fs::remove(path);
}

TEST_CASE("landscape command") {
  const fs::path csv = scratch("land.csv");
  const Invocation r = invoke({"landscape", "--max-m", "2", "--max-n", "8", "--budget-nodes", "1000000",
                     "--csv", csv.string()});
  CHECK(r.code == 0);
  std::ifstream f(csv);
  std::stringstream text;
  text << f.rdbuf();
  const std::string expected_row2[] = {"N", "N", "H", "V", "N", "N", "H"};
  for (int n = 2; n <= 8; ++n) {
    CHECK(contains(text.str(), "2," + std::to_string(n) + "," + expected_row2[n - 2] + ","));
  }
  CHECK(contains(invoke({"landscape", "--max-m", "1", "--max-n", "2", "--print-csv"}).out,
                 "m,n,label,provenance"));
  fs::remove(csv);
}

TEST_CASE("selftest command") {
  const Invocation ok = invoke({"selftest", "--area-limit", "8"});
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "PASS"));
  const Invocation bad = invoke({"selftest", "--area-limit", "8", "--mover-wins-margin", "0"});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "counterexample"));
}
