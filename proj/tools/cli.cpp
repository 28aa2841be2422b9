#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "domineering/outcome.hpp"
#include "selftest.hpp"

namespace domineering::cli {

using nlohmann::json;

ConfigFingerprint fingerprint_of(const SolveConfig& cfg) {
  return ConfigFingerprint{cfg.tt.index_bits, to_string(cfg.tt.scheme), cfg.use_knowledge,
                           cfg.use_tt,        to_string(cfg.order),     cfg.seed};
}

namespace {

json record_json(const ResultRecord& r, bool undecided) {
  json j;
  j["rows"] = r.rows;
  j["cols"] = r.cols;
  j["to_move"] = std::string(1, to_char(r.to_move));
  j["winner"] = undecided ? json(nullptr) : json(std::string(1, to_char(r.winner)));
  j["nodes"] = r.nodes;
  j["elapsed_ms"] = r.elapsed_ms;
  j["config"] = {{"tt_bits", r.config.tt_bits}, {"tt_scheme", r.config.tt_scheme},
                 {"knowledge", r.config.knowledge}, {"tt", r.config.tt},
                 {"order", r.config.order},         {"seed", r.config.seed}};
  j["timestamp"] = r.timestamp;
  return j;
}

}  // namespace

std::string to_json_line(const ResultRecord& r) { return record_json(r, false).dump(); }

ResultRecord parse_json_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    ResultRecord r;
    r.rows = j.at("rows").get<int>();
    r.cols = j.at("cols").get<int>();
    r.to_move = parse_player(j.at("to_move").get<std::string>());
    r.winner = parse_player(j.at("winner").get<std::string>());
    r.nodes = j.at("nodes").get<uint64_t>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    const json& c = j.at("config");
    r.config.tt_bits = c.at("tt_bits").get<int>();
    r.config.tt_scheme = c.at("tt_scheme").get<std::string>();
    r.config.knowledge = c.at("knowledge").get<bool>();
    r.config.tt = c.at("tt").get<bool>();
    r.config.order = c.at("order").get<std::string>();
    r.config.seed = c.at("seed").get<uint64_t>();
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad result record: ") + e.what());
  }
}

void ResultCache::append(const ResultRecord& r) const {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream f(path_, std::ios::app);
  if (!f) throw std::runtime_error("cannot open cache " + path_.string());
  f << to_json_line(r) << '\n';
}

std::vector<ResultRecord> ResultCache::load() const {
  std::vector<ResultRecord> out;
  std::ifstream f(path_);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(parse_json_line(line));
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

std::optional<ResultRecord> ResultCache::find(BoardDims dims, Player to_move,
                                              const ConfigFingerprint& config) const {
  std::optional<ResultRecord> hit;
  for (const ResultRecord& r : load()) {
    if (r.rows == dims.rows && r.cols == dims.cols && r.to_move == to_move && r.config == config) {
      hit = r;
    }
  }
  return hit;
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv(kCacheEnv); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "domineering" / "results.jsonl";
  }
  return "domineering-results.jsonl";
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

namespace {

struct EngineFlags {
  int tt_bits = TTConfig{}.index_bits;
  std::string tt_scheme = "deep";
  bool no_knowledge = false;
  bool no_tt = false;
  bool basic = false;
  std::string rules;
  std::string order = "heuristic";
  std::string seed;
  std::optional<uint64_t> node_limit;

  // Records carry no rule set, so only the default search is cached.
  bool cacheable() const { return !basic && (rules.empty() || rules == "extended"); }

  SolveConfig config() const {
    SolveConfig cfg = basic ? basic_config() : SolveConfig{};
    if (!rules.empty()) cfg.rules.rule_set = parse_rule_set(rules);
    cfg.use_knowledge = !no_knowledge;
    cfg.use_tt = !no_tt;
    cfg.tt.index_bits = tt_bits;
    cfg.tt.scheme = parse_scheme(tt_scheme);
    cfg.order = parse_order(order);
    if (!seed.empty()) {
      size_t used = 0;
      cfg.seed = std::stoull(seed, &used, 0);
      if (used != seed.size()) throw std::invalid_argument("bad seed '" + seed + "'");
    }
    cfg.node_limit = node_limit;
    return cfg;
  }
};

struct CacheFlags {
  std::string path;
  bool disabled = false;

  std::optional<ResultCache> open() const {
    if (disabled) return std::nullopt;
    return ResultCache(path.empty() ? default_cache_path() : std::filesystem::path(path));
  }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--tt-bits", f.tt_bits, "log2 of table buckets")
      ->check(CLI::Range(TTConfig::kMinBits, TTConfig::kMaxBits))
      ->capture_default_str();
  cmd->add_option("--tt-scheme", f.tt_scheme, "replacement scheme")
      ->check(CLI::IsMember({"deep", "twobig"}))
      ->capture_default_str();
  cmd->add_flag("--no-knowledge", f.no_knowledge, "disable static bounds");
  cmd->add_flag("--no-tt", f.no_tt, "disable the transposition table");
  cmd->add_option("--rules", f.rules, "static rule set")
      ->check(CLI::IsMember({"basic", "extended"}));
  cmd->add_flag("--basic", f.basic,
                "basic rules with child screening, child probes, single safe move and history off");
  cmd->add_option("--order", f.order, "move ordering")
      ->check(CLI::IsMember({"rowmajor", "heuristic"}))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "Zobrist seed (decimal or 0x hex)");
  cmd->add_option("--node-limit", f.node_limit, "abort a solve after this many nodes");
}

void add_cache_flags(CLI::App* cmd, CacheFlags& f) {
  auto* path = cmd->add_option("--cache", f.path, std::string("results file (default $") +
                                                      kCacheEnv + " or ~/.cache/domineering)");
  cmd->add_flag("--no-cache", f.disabled, "do not record results")->excludes(path);
}

std::string player_result(Player starter, Player winner) {
  return std::string(winner == starter ? "1" : "2") + " (" + to_string(winner) + ")";
}

ResultRecord make_record(BoardDims d, Player to_move, const SolveReport& rep,
                         const SolveConfig& cfg) {
  ResultRecord r;
  r.rows = d.rows;
  r.cols = d.cols;
  r.to_move = to_move;
  r.winner = rep.winner.value_or(Player::Vertical);
  r.nodes = rep.nodes;
  r.elapsed_ms = rep.elapsed_ms();
  r.config = fingerprint_of(cfg);
  r.timestamp = utc_timestamp();
  return r;
}

Position read_diagram(const std::string& source) {
  std::stringstream text;
  if (source == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream f(source);
    if (!f) throw std::invalid_argument("cannot read diagram " + source);
    text << f.rdbuf();
  }
  return parse_diagram(text.str());
}

int cmd_solve(BoardDims dims, const std::string& diagram, const std::string& to_move_flag,
              const EngineFlags& ef, const CacheFlags& cf, bool as_json, bool show_bounds,
              std::ostream& out) {
  const SolveConfig cfg = ef.config();
  const Player to_move = parse_player(to_move_flag);
  const Position pos = diagram.empty() ? new_position(dims) : read_diagram(diagram);
  dims = pos.dims();

  if (show_bounds && !as_json) {
    const KnowledgeBounds b = bounds(pos);
    out << to_diagram(pos) << "safe_lower_v " << b.safe_lower_v << "  safe_lower_h "
        << b.safe_lower_h << "  real_upper_v " << b.real_upper_v << "  real_upper_h "
        << b.real_upper_h << "\nstatic verdict: " << to_string(static_verdict(pos, to_move))
        << '\n';
  }

  const SolveReport rep = solve(pos, to_move, cfg);
  const ResultRecord rec = make_record(dims, to_move, rep, cfg);
  if (as_json) {
    out << record_json(rec, !rep.solved()).dump() << '\n';
  } else {
    out << to_string(dims) << ", " << to_string(to_move) << " to move\n";
    if (rep.solved()) {
      out << "winner: " << player_result(to_move, *rep.winner) << '\n';
    } else {
      out << "winner: undecided (node limit " << *cfg.node_limit << " reached)\n";
    }
    out << "nodes: " << rep.nodes << "\nelapsed_ms: " << std::fixed << std::setprecision(3)
        << rep.elapsed_ms() << std::defaultfloat << "\ntt_hits: " << rep.tt_hits
        << "\nstatic_cutoffs: " << rep.static_cutoffs << "\nscreened: " << rep.screened << '\n';
  }
  if (!rep.solved()) return kBudgetExhausted;
  if (auto cache = cf.open(); cache && diagram.empty() && ef.cacheable()) cache->append(rec);
  return kOk;
}

int cmd_outcome(BoardDims dims, const EngineFlags& ef, const CacheFlags& cf, bool as_json,
                std::ostream& out) {
  const SolveConfig cfg = ef.config();
  const Position pos = new_position(dims);
  const auto cache = ef.cacheable() ? cf.open() : std::nullopt;
  OutcomeKnowledge k;
  json records = json::array();
  bool exhausted = false;
  for (Player starter : {Player::Vertical, Player::Horizontal}) {
    const SolveReport rep = solve(pos, starter, cfg);
    const ResultRecord rec = make_record(dims, starter, rep, cfg);
    records.push_back(record_json(rec, !rep.solved()));
    if (!rep.solved()) {
      exhausted = true;
      continue;
    }
    k.field(starter) = {rep.winner, Provenance::Solved};
    if (cache) cache->append(rec);
  }
  if (as_json) {
    out << json{{"rows", dims.rows}, {"cols", dims.cols}, {"label", k.label()},
                {"solves", records}}
               .dump()
        << '\n';
  } else {
    out << to_string(dims) << ": " << k.label() << '\n';
    for (Player starter : {Player::Vertical, Player::Horizontal}) {
      const FieldKnowledge& f = k.field(starter);
      out << "  " << to_string(starter) << " starts: "
          << (f.winner ? player_result(starter, *f.winner) : "undecided") << '\n';
    }
  }
  return exhausted ? kBudgetExhausted : kOk;
}

int cmd_landscape(const LandscapeOptions& opts, const std::string& base_path,
                  const std::string& csv_path, bool csv_stdout, std::ostream& out,
                  std::ostream& err) {
  KnownResults base;
  if (!base_path.empty()) {
    try {
      base = ingest_known_results(base_path);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  const Landscape land = generate_landscape(opts, base);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) {
      err << "error: cannot write " << csv_path << '\n';
      return kUsage;
    }
    f << landscape_csv(land);
  }
  out << (csv_stdout ? landscape_csv(land) : landscape_grid(land));
  return land.conflicts.empty() ? kOk : kPropertyFailure;
}

int cmd_selftest(int area_limit, int margin, std::ostream& out) {
  KnowledgeRules rules;
  rules.mover_wins_margin = margin;
  bool ok = true;
  selftest::run_all(area_limit, rules, [&](const selftest::SuiteResult& r) {
    out << (r.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
    for (const selftest::Failure& f : r.failures) {
      out << "  counterexample: " << f.detail << '\n' << f.diagram;
    }
    ok = ok && r.ok();
    out.flush();
  });
  return ok ? kOk : kPropertyFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Domineering solver and outcome-class tools", "domineering"};
  app.require_subcommand(1);

  BoardDims dims{0, 0};
  EngineFlags engine;
  CacheFlags cache;
  bool as_json = false;

  auto add_dims = [&](CLI::App* cmd, bool required) {
    auto* r = cmd->add_option("--rows", dims.rows, "board rows (m)")->check(CLI::PositiveNumber);
    auto* c = cmd->add_option("--cols", dims.cols, "board columns (n)")->check(CLI::PositiveNumber);
    if (required) {
      r->required();
      c->required();
    }
    return std::make_pair(r, c);
  };

  auto* solve_cmd = app.add_subcommand("solve", "winner of one board");
  const auto [solve_rows, solve_cols] = add_dims(solve_cmd, false);
  std::string to_move = "V";
  std::string diagram;
  bool show_bounds = false;
  solve_cmd->add_option("--to-move", to_move, "player to move first (V or H)")
      ->capture_default_str();
  auto* diagram_opt =
      solve_cmd->add_option("--diagram", diagram, "read the position from a diagram file ('-' = stdin)");
  diagram_opt->excludes(solve_rows)->excludes(solve_cols);
  solve_cmd->add_flag("--show-bounds", show_bounds, "print the static bounds first");
  add_engine_flags(solve_cmd, engine);
  add_cache_flags(solve_cmd, cache);
  solve_cmd->add_flag("--json", as_json, "print one JSON record");

  auto* outcome_cmd = app.add_subcommand("outcome", "outcome class of one board");
  add_dims(outcome_cmd, true);
  add_engine_flags(outcome_cmd, engine);
  add_cache_flags(outcome_cmd, cache);
  outcome_cmd->add_flag("--json", as_json, "print JSON");

  auto* land_cmd = app.add_subcommand("landscape", "outcome-class table");
  LandscapeOptions land;
  std::string base_path, csv_path;
  bool csv_stdout = false;
  land_cmd->add_option("--max-m", land.max_m, "rows of the table")
      ->check(CLI::Range(1, kMaxLandscape))
      ->capture_default_str();
  land_cmd->add_option("--max-n", land.max_n, "columns of the table")
      ->check(CLI::Range(1, kMaxLandscape))
      ->capture_default_str();
  land_cmd->add_option("--base", base_path, "known results, m,n,label rows");
  land_cmd->add_option("--budget-nodes", land.budget_nodes, "node limit per solve, 0 = no solving")
      ->capture_default_str();
  land_cmd->add_option("--jobs", land.jobs, "parallel solves")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  land_cmd->add_option("--csv", csv_path, "also write m,n,label,provenance CSV here");
  land_cmd->add_flag("--print-csv", csv_stdout, "print CSV instead of the grid");
  add_engine_flags(land_cmd, engine);

  auto* self_cmd = app.add_subcommand("selftest", "oracle, knowledge, symmetry and duality sweeps");
  int area_limit = 16;
  int margin = KnowledgeRules{}.mover_wins_margin;
  self_cmd->add_option("--area-limit", area_limit, "largest board area swept")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  self_cmd->add_option("--mover-wins-margin", margin, "static win threshold (testing hook)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) {
      if (diagram.empty() && (dims.rows == 0 || dims.cols == 0)) {
        err << "error: solve needs --rows and --cols, or --diagram\n";
        return kUsage;
      }
      return cmd_solve(dims, diagram, to_move, engine, cache, as_json, show_bounds, out);
    }
    if (*outcome_cmd) return cmd_outcome(dims, engine, cache, as_json, out);
    if (*land_cmd) {
      land.solve = engine.config();
      return cmd_landscape(land, base_path, csv_path, csv_stdout, out, err);
    }
    if (*self_cmd) return cmd_selftest(area_limit, margin, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("domineering");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace domineering::cli
