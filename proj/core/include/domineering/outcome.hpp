#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "domineering/board.hpp"
#include "domineering/search.hpp"

namespace domineering {

// N: the player to move first wins. P: the second player wins.
// V / H: that player wins whoever starts.
enum class OutcomeClass : uint8_t { N, P, V, H };

const char* to_string(OutcomeClass c);

// Bit set over OutcomeClass.
using ClassSet = uint8_t;
inline constexpr ClassSet kAllClasses = 0b1111;
constexpr ClassSet class_bit(OutcomeClass c) { return static_cast<ClassSet>(1U << static_cast<int>(c)); }

enum class Provenance : uint8_t { Unknown, Solved, Rule, Ingested };

const char* to_string(Provenance p);

struct FieldKnowledge {
  std::optional<Player> winner;
  Provenance provenance = Provenance::Unknown;

  bool known() const { return winner.has_value(); }
  bool operator==(const FieldKnowledge&) const = default;
};

// What is known about one board: the winner for each starting player, plus
// class exclusions that field knowledge alone cannot express ("-V", "NP").
struct OutcomeKnowledge {
  FieldKnowledge when_v_starts;
  FieldKnowledge when_h_starts;
  ClassSet excluded = 0;
  Provenance exclusion_provenance = Provenance::Unknown;
  // Source label was not one of the recognised classes (the "1" at 2x27 in the known-results table).
  bool anomaly = false;

  static OutcomeKnowledge of_class(OutcomeClass c, Provenance p);

  FieldKnowledge& field(Player starter) {
    return starter == Player::Vertical ? when_v_starts : when_h_starts;
  }
  const FieldKnowledge& field(Player starter) const {
    return starter == Player::Vertical ? when_v_starts : when_h_starts;
  }

  // Classes consistent with the fields and exclusions. Empty means contradiction.
  ClassSet possible() const;
  bool consistent() const { return possible() != 0; }
  std::optional<OutcomeClass> outcome_class() const;
  // "N", "NH", "-V", ... ; "?" when nothing is known, "!" when contradictory.
  std::string label() const;
  // e.g. "solved", "ingested+rule"; "unknown" when nothing is known.
  std::string provenance_label() const;

  bool operator==(const OutcomeKnowledge&) const = default;
};

// Class of a complete pair of per-start winners.
OutcomeClass class_of(Player winner_when_v_starts, Player winner_when_h_starts);

struct LandscapeCell {
  BoardDims dims;
  OutcomeKnowledge knowledge;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Solves both start cases. A field whose solve hits the node limit stays unknown.
OutcomeKnowledge outcome_class(BoardDims dims, const SolveConfig& cfg = {});

// Knowledge about the transposed board with the players' roles exchanged.
OutcomeKnowledge transpose_dual(const OutcomeKnowledge& k);

// Side-by-side concatenation m×p ++ m×q. Fills only what the Horizontal rules
// prove:
//   hs(a) ∧ hs(b) ⇒ hs(a++b)
//   hs(a) ∧ hf(b) ⇒ hf(a++b),  hf(a) ∧ hs(b) ⇒ hf(a++b)
// where hs = Horizontal wins when Vertical starts, hf = when Horizontal starts.
LandscapeCell combine_horizontal(const LandscapeCell& a, const LandscapeCell& b);
// Stacking (p+q)×n; the transpose dual of combine_horizontal.
LandscapeCell combine_vertical(const LandscapeCell& a, const LandscapeCell& b);

// Adds the fields of `derived` that `into` lacks, tagged `tag`. Returns true
// when anything changed; sets `conflict` when a known field disagrees.
bool merge_knowledge(OutcomeKnowledge& into, const OutcomeKnowledge& derived, Provenance tag,
                     bool* conflict = nullptr);

using KnownResults = std::map<std::pair<int, int>, OutcomeKnowledge>;

// Parses "m,n,label" rows. Blank lines, '#' comments and an "m,n,label"
// header are skipped. Throws ParseError with the 1-based line number.
KnownResults parse_known_results(std::string_view text);
KnownResults ingest_known_results(const std::filesystem::path& path);

struct LandscapeOptions {
  int max_m = 6;
  int max_n = 6;
  // Node limit per single solve; 0 disables solving.
  uint64_t budget_nodes = 0;
  SolveConfig solve;
  int jobs = 1;
};

inline constexpr int kMaxLandscape = 32;

struct Landscape {
  int max_m = 0;
  int max_n = 0;
  // Row-major, (m, n) at index (m - 1) * max_n + (n - 1).
  std::vector<LandscapeCell> cells;
  std::vector<std::string> conflicts;
  std::vector<std::string> notes;
  int closure_rounds = 0;

  const LandscapeCell& at(int m, int n) const { return cells[index(m, n)]; }
  LandscapeCell& at(int m, int n) { return cells[index(m, n)]; }
  size_t index(int m, int n) const { return static_cast<size_t>(m - 1) * max_n + (n - 1); }
};

Landscape generate_landscape(const LandscapeOptions& opts, const KnownResults& base = {});

// One "m,n,label,provenance" row per cell, header first.
std::string landscape_csv(const Landscape& land);
// Aligned grid in the m\n layout, followed by notes and conflicts.
std::string landscape_grid(const Landscape& land);

}  // namespace domineering
