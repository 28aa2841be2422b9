// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "domineering/outcome.hpp"
#include "domineering/search.hpp"
#include "selftest.hpp"

using namespace domineering;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  char elapsed[32];
  std::snprintf(elapsed, sizeof elapsed, "%.1f s", seconds_since(t0));
  std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " ["
            << elapsed << "] " << v.detail << std::endl;
}

// The 8x8 solve from criterion 1, reused by criterion 2.
std::optional<SolveReport> square8;

KnownResults table3() { return ingest_known_results(DOMINEERING_DATA_DIR "/table3.csv"); }

Verdict square_boards() {
  const Player expected[] = {Player::Vertical, Player::Vertical, Player::Vertical,
                             Player::Horizontal, Player::Vertical, Player::Vertical,
                             Player::Vertical};
  Verdict v;
  const auto t0 = Clock::now();
  std::ostringstream out;
  for (int n = 2; n <= 8; ++n) {
    const SolveReport r = solve(new_position({n, n}), Player::Vertical);
    if (n == 8) square8 = r;
    const Player want = expected[n - 2];
    out << n << "x" << n << "=" << (r.winner ? (*r.winner == Player::Vertical ? "1" : "2") : "?")
        << " ";
    if (r.winner != want) v.pass = false;
  }
  const double total = seconds_since(t0);
  if (total > 600) v.pass = false;
  out << "total " << total << " s (limit 600 s)";
  v.detail = out.str();
  return v;
}

Verdict node_efficiency() {
  Verdict v;
  if (!square8) square8 = solve(new_position({8, 8}), Player::Vertical);
  const SolveReport with = *square8;
  std::ostringstream out;
  out << "knowledge on: " << with.nodes << " nodes";
  if (!with.solved() || with.winner != Player::Vertical || with.nodes > 20'000'000) {
    v.pass = false;
    out << " (limit 20000000)";
    v.detail = out.str();
    return v;
  }
  SolveConfig off;
  off.use_knowledge = false;
  off.node_limit = 10 * with.nodes;
  const SolveReport without = solve(new_position({8, 8}), Player::Vertical, off);
  if (without.solved()) {
    v.pass = false;
    out << "; knowledge off solved in " << without.nodes << " nodes, ratio "
        << static_cast<double>(without.nodes) / static_cast<double>(with.nodes);
  } else {
    out << "; knowledge off unsolved after " << *off.node_limit << " nodes (ratio > 10)";
  }
  v.detail = out.str();
  return v;
}

Verdict landscape_block() {
  const KnownResults truth = table3();
  LandscapeOptions opts;
  opts.max_m = 6;
  opts.max_n = 6;
  opts.budget_nodes = 100'000'000;
  const Landscape land = generate_landscape(opts);
  Verdict v;
  int matched = 0;
  std::ostringstream bad;
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      const std::string got = land.at(m, n).knowledge.label();
      const std::string want = truth.at({m, n}).label();
      if (got == want) {
        ++matched;
      } else {
        v.pass = false;
        bad << " " << m << "x" << n << " got " << got << " want " << want << ";";
      }
    }
  }
  v.detail = std::to_string(matched) + "/36 cells match" + bad.str();
  return v;
}

Verdict oracle_sweep() {
  const selftest::SuiteResult r = selftest::oracle_sweep(16);
  Verdict v{r.ok(), std::to_string(r.checks) + " solver/oracle comparisons"};
  for (const auto& f : r.failures) v.detail += "; " + f.detail;
  return v;
}

Verdict translational_rules() {
  Verdict v;
  SolveConfig cfg;
  cfg.tt.index_bits = 18;
  std::map<std::pair<int, int>, OutcomeKnowledge> solved;
  auto direct = [&](int m, int n) -> const OutcomeKnowledge& {
    auto it = solved.find({m, n});
    if (it == solved.end()) it = solved.emplace(std::make_pair(m, n), outcome_class({m, n}, cfg)).first;
    return it->second;
  };
  int derived = 0;
  int mismatches = 0;
  std::ostringstream bad;
  auto check = [&](const LandscapeCell& got, const OutcomeKnowledge& truth) {
    for (Player starter : {Player::Vertical, Player::Horizontal}) {
      const FieldKnowledge& f = got.knowledge.field(starter);
      if (!f.known()) continue;
      ++derived;
      if (f.winner != truth.field(starter).winner) {
        ++mismatches;
        bad << " " << to_string(got.dims);
      }
    }
  };
  for (int m = 1; m <= 3; ++m) {
    for (int p = 1; m * (p + 1) <= 24; ++p) {
      for (int q = 1; m * (p + q) <= 24; ++q) {
        check(combine_horizontal({{m, p}, direct(m, p)}, {{m, q}, direct(m, q)}),
              direct(m, p + q));
        check(combine_vertical({{p, m}, direct(p, m)}, {{q, m}, direct(q, m)}),
              direct(p + q, m));
      }
    }
  }

  KnownResults base = table3();
  for (int n : {21, 25, 29, 31}) {
    base.erase({6, n});
    base.erase({n, 6});
  }
  LandscapeOptions opts;
  opts.max_m = 31;
  opts.max_n = 31;
  opts.budget_nodes = 0;
  const Landscape land = generate_landscape(opts, base);
  const std::pair<int, const char*> targets[] = {{25, "H"}, {29, "H"}, {31, "H"}, {21, "NH"}};
  std::ostringstream closure;
  for (const auto& [n, want] : targets) {
    const OutcomeKnowledge& k = land.at(6, n).knowledge;
    closure << " 6x" << n << "=" << k.label();
    if (k.label() != want || k.provenance_label() != "rule") {
      v.pass = false;
      closure << "(want " << want << " by rule)";
    }
  }
  if (mismatches) v.pass = false;
  if (!land.conflicts.empty()) {
    v.pass = false;
    closure << "; conflicts: " << land.conflicts.front();
  }
  v.detail = std::to_string(derived) + " derived fields, " + std::to_string(mismatches) +
             " mismatches" + bad.str() + ";" + closure.str();
  return v;
}

Verdict symmetry_and_duality() {
  std::mt19937_64 rng(20140601);
  SolveConfig cfg;
  cfg.tt.index_bits = 18;
  int checks = 0;
  for (int i = 0; i < 200; ++i) {
    const BoardDims d{1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 8)};
    const int plies = static_cast<int>(rng() % (d.area() / 2 + 1));
    const Position pos = selftest::random_position(d, plies, rng);
    for (Player mover : {Player::Vertical, Player::Horizontal}) {
      const Player w = *solve(pos, mover, cfg).winner;
      for (Symmetry s : kAllSymmetries) {
        ++checks;
        if (*solve(transform(pos, s), mover, cfg).winner != w) {
          return {false, to_string(d) + " " + to_string(s) + " changes the winner:\n" +
                             to_diagram(pos)};
        }
      }
      ++checks;
      if (*solve(transpose(pos), opponent(mover), cfg).winner != opponent(w)) {
        return {false, to_string(d) + " transpose disagrees:\n" + to_diagram(pos)};
      }
    }
  }
  return {true, std::to_string(checks) + " checks on 200 positions"};
}

Verdict determinism() {
  auto nodes = []() {
    std::ostringstream out, err;
    const int code = cli::run(std::vector<std::string>{"solve", "--rows", "7", "--cols", "7",
                                                       "--no-cache", "--json"},
                              out, err);
    if (code != 0) throw std::runtime_error("solve exited with " + std::to_string(code));
    return nlohmann::json::parse(out.str())["nodes"].get<uint64_t>();
  };
  const uint64_t a = nodes();
  const uint64_t b = nodes();
  return {a == b, "7x7 nodes " + std::to_string(a) + " and " + std::to_string(b)};
}

}  // namespace

int main() {
  report(1, "square board winners with the default config", square_boards);
  report(2, "8x8 node count and knowledge speed-up", node_efficiency);
  report(3, "landscape for m,n <= 6 matches the known table", landscape_block);
  report(4, "oracle equivalence for every board with area <= 16", oracle_sweep);
  report(5, "translational rules and closure", translational_rules);
  report(6, "symmetry and transpose duality on 200 random positions", symmetry_and_duality);
  report(7, "deterministic node counts for 7x7", determinism);
  return failures == 0 ? 0 : 1;
}
