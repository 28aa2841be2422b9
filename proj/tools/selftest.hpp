#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "domineering/board.hpp"
#include "domineering/knowledge.hpp"
#include "domineering/search.hpp"

namespace domineering::selftest {

struct Failure {
  std::string suite;
  std::string detail;
  std::string diagram;
};

struct SuiteResult {
  std::string name;
  uint64_t checks = 0;
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }
};

// Every board with area <= area_limit, both starters, every combination of
// knowledge on/off, table off/deep/twobig and both orderings, against the
// brute-force oracle. Stops after the first mismatch.
SuiteResult oracle_sweep(int area_limit, KnowledgeRules rules = {});

// Every reachable position of every board with area <= area_limit: a static
// verdict other than Unknown must match the exact winner.
SuiteResult knowledge_sweep(int area_limit, KnowledgeRules rules = {});

// Random positions on boards with area <= area_limit: winner unchanged by the
// four symmetries, and winner(p, V) is the role swap of winner(transpose(p), H).
SuiteResult symmetry_duality(int area_limit, int samples, uint64_t seed);

// The suites above in order; `progress` is called after each one.
std::vector<SuiteResult> run_all(int area_limit, KnowledgeRules rules = {},
                                 const std::function<void(const SuiteResult&)>& progress = {});

// Exact winner via memoised exhaustive search over occupancies.
class ExactSolver {
 public:
  explicit ExactSolver(BoardDims dims);
  Player winner(const Position& pos, Player to_move);
  size_t memo_size() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Random position reached by `plies` random legal moves from the empty board,
// alternating from a random starter; stops early when the mover is stuck.
Position random_position(BoardDims dims, int plies, std::mt19937_64& rng);

}  // namespace domineering::selftest
