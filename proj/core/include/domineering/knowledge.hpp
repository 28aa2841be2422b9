#pragma once

#include <cstdint>
#include <string_view>

#include "domineering/board.hpp"

namespace domineering {

// Counts for both players of a single position.
//
// safe_lower_*: moves the player can make no matter what the opponent does.
//   Sum of floor(len / 2) over the player's protected runs.
// real_upper_*: moves the player can make at most in any continuation.
//   Sum of floor(len / 2) over all of the player's runs.
struct KnowledgeBounds {
  int safe_lower_v = 0;
  int safe_lower_h = 0;
  int real_upper_v = 0;
  int real_upper_h = 0;

  int safe_lower(Player p) const { return p == Player::Vertical ? safe_lower_v : safe_lower_h; }
  int real_upper(Player p) const { return p == Player::Vertical ? real_upper_v : real_upper_h; }

  bool operator==(const KnowledgeBounds&) const = default;
};

enum class StaticVerdict : uint8_t { MoverWins, MoverLoses, Unknown };

const char* to_string(StaticVerdict v);

// Basic: the protected-run bounds above and nothing else.
// Extended: private-cell pairs, vulnerable placements and a reserve-aware
// bound on the opponent (see Reserve). Decides every position Basic decides,
// with the same verdict, and many more.
enum class RuleSet : uint8_t { Basic, Extended };

const char* to_string(RuleSet r);
RuleSet parse_rule_set(std::string_view s);

// mover_wins_margin: the mover-wins rule needs guaranteed >= bound + margin.
// The sound value is 1; the parameter exists so self-tests can show that a
// weaker rule is caught by the oracle sweep.
struct KnowledgeRules {
  int mover_wins_margin = 1;
  RuleSet rule_set = RuleSet::Extended;
};

// Moves a player keeps whatever the opponent does.
//
// safe: disjoint pairs of private cells (no empty neighbour across the run),
//   which the opponent can never cover.
// vulnerable: further disjoint placements with at least one exposed cell,
//   chosen so that a single opponent domino touches at most one of them.
// two_exposed: vulnerable placements with both cells exposed.
// cells: the cells of the vulnerable placements.
//
// Playing vulnerable placements first, the holder gets
//   safe + ceil(vulnerable / 2) moves when moving first,
//   safe + floor(vulnerable / 2) when moving second.
// An opponent move either avoids `cells` (at most packed_pairs of the rest)
// or touches one placement, and each killed placement absorbs at most one
// touch per exposed cell.
struct Reserve {
  int safe = 0;
  int vulnerable = 0;
  int two_exposed = 0;
  Bits cells;

  bool operator==(const Reserve&) const = default;
};

Reserve reserve(const Position& pos, Player player);

// Empty cells the opponent of `player` can never cover.
Bits private_cells(const Geometry& geo, const Bits& empty, Player player);

int safe_moves_lower(const Position& pos, Player player);
int real_moves_upper(const Position& pos, Player player);
KnowledgeBounds bounds(const Position& pos);

StaticVerdict static_verdict(const Position& pos, Player to_move, KnowledgeRules rules = {});
StaticVerdict verdict_from_bounds(const KnowledgeBounds& b, Player to_move,
                                  KnowledgeRules rules = {});

// Number of disjoint dominoes that fit in `cells` when every run along the
// player's orientation is packed greedily: sum of floor(len / 2).
int packed_pairs(const Geometry& geo, Bits cells, Player player);

// Empty cells of the player's runs that touch an empty perpendicular
// neighbour, spread along the run so whole unprotected runs are covered.
Bits unprotected_run_cells(const Geometry& geo, const Bits& empty, Player player);

}  // namespace domineering
