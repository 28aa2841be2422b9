#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "domineering/board.hpp"
#include "domineering/knowledge.hpp"
#include "domineering/tt.hpp"

namespace domineering {

enum class MoveOrder : uint8_t { RowMajor, Heuristic };

const char* to_string(MoveOrder o);
MoveOrder parse_order(std::string_view s);

struct SolveConfig {
  bool use_knowledge = true;
  bool use_tt = true;
  TTConfig tt;
  std::optional<uint64_t> node_limit;
  MoveOrder order = MoveOrder::Heuristic;
  uint64_t seed = kDefaultSeed;
  KnowledgeRules rules;

  // Refinements that never change the winner.
  // screen_children: static verdict of every child before descending. A lost
  //   child proves the node; won children are skipped. Needs use_knowledge.
  // probe_children: table lookup of every child before descending.
  //   Needs use_tt.
  // single_safe_move: of the moves inside protected runs keep one, taken at
  //   a run end. Such runs are separate integer components, so every run-end
  //   move leaves the same value and inner moves are no better. Needs
  //   use_knowledge.
  // history: with Heuristic order, break score ties by the subtree sizes of
  //   earlier cutoffs made by the same move.
  bool screen_children = true;
  bool probe_children = true;
  bool single_safe_move = true;
  bool history = true;
};

// Basic rules with every refinement off.
SolveConfig basic_config();

struct SolveReport {
  // Empty when the node limit stopped the solve.
  std::optional<Player> winner;
  uint64_t nodes = 0;
  std::chrono::nanoseconds elapsed{0};
  // Table hits, including probes of children.
  uint64_t tt_hits = 0;
  // Nodes closed by a static verdict on entry.
  uint64_t static_cutoffs = 0;
  // Children settled by screening without being visited.
  uint64_t screened = 0;

  bool solved() const { return winner.has_value(); }
  double elapsed_ms() const { return std::chrono::duration<double, std::milli>(elapsed).count(); }
};

// Winner under optimal play with `to_move` moving first. Every visited node,
// including the root and nodes closed by knowledge or the table, counts once.
// Children settled by screening or a child probe are generated but not
// visited and do not count.
SolveReport solve(const Position& pos, Player to_move, const SolveConfig& cfg = {});

// Heuristic: stable sort, descending by
//   (safe moves of the mover gained) - (real_upper(opponent) gained)
// measured on each child. Safe moves are safe_moves_lower under Basic rules
// and pairs of private cells under Extended rules. RowMajor returns the
// input unchanged.
std::vector<Move> order_moves(const Position& pos, Player player, std::vector<Move> moves,
                              MoveOrder order = MoveOrder::Heuristic,
                              RuleSet rule_set = RuleSet::Extended);

// Keeps the first of any moves whose children share a canonical form.
std::vector<Move> dedupe_symmetric(const Position& pos, std::vector<Move> moves);

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kOracleMaxEmpty = 20;

// Plain exhaustive negamax: no table, no knowledge, no pruning of symmetric
// moves. Refuses positions with more than 20 empty cells.
Player brute_force_oracle(const Position& pos, Player to_move);

}  // namespace domineering
