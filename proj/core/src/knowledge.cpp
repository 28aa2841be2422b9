#include "domineering/knowledge.hpp"

#include <algorithm>
#include <string>

namespace domineering {

const char* to_string(StaticVerdict v) {
  switch (v) {
    case StaticVerdict::MoverWins: return "MoverWins";
    case StaticVerdict::MoverLoses: return "MoverLoses";
    case StaticVerdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(RuleSet r) { return r == RuleSet::Basic ? "basic" : "extended"; }

RuleSet parse_rule_set(std::string_view s) {
  if (s == "basic") return RuleSet::Basic;
  if (s == "extended") return RuleSet::Extended;
  throw std::invalid_argument("unknown rule set '" + std::string(s) +
                              "' (expected basic or extended)");
}

int packed_pairs(const Geometry& geo, Bits cells, Player player) {
  int pairs = 0;
  // Each round takes the first two cells of every run (or a lone last cell).
  while (cells.any()) {
    const Bits starts = cells & ~geo.fwd(cells, player);
    const Bits has_next = geo.back(cells, player);
    const Bits paired = starts & has_next;
    pairs += paired.count();
    cells &= ~(starts | geo.fwd(paired, player));
  }
  return pairs;
}

Bits unprotected_run_cells(const Geometry& geo, const Bits& empty, Player player) {
  // Perpendicular neighbours are the other player's along-run neighbours.
  const Player other = opponent(player);
  Bits bad = empty & (geo.fwd(empty, other) | geo.back(empty, other));
  for (;;) {
    const Bits grown = bad | ((geo.fwd(bad, player) | geo.back(bad, player)) & empty);
    if (grown == bad) return bad;
    bad = grown;
  }
}

Bits private_cells(const Geometry& geo, const Bits& empty, Player player) {
  const Player other = opponent(player);
  return empty & ~(geo.fwd(empty, other) | geo.back(empty, other));
}

int safe_moves_lower(const Position& pos, Player player) {
  const Geometry& geo = pos.geometry();
  const Bits e = pos.empty();
  return packed_pairs(geo, e & ~unprotected_run_cells(geo, e, player), player);
}

int real_moves_upper(const Position& pos, Player player) {
  return packed_pairs(pos.geometry(), pos.empty(), player);
}

KnowledgeBounds bounds(const Position& pos) {
  return KnowledgeBounds{
      .safe_lower_v = safe_moves_lower(pos, Player::Vertical),
      .safe_lower_h = safe_moves_lower(pos, Player::Horizontal),
      .real_upper_v = real_moves_upper(pos, Player::Vertical),
      .real_upper_h = real_moves_upper(pos, Player::Horizontal),
  };
}

Reserve reserve(const Position& pos, Player player) {
  const Geometry& geo = pos.geometry();
  const Bits e = pos.empty();
  const Bits priv = private_cells(geo, e, player);
  const bool vertical = player == Player::Vertical;
  const int cols = pos.cols();
  const int lines = vertical ? cols : pos.rows();
  const int len = vertical ? pos.rows() : cols;
  const int step = vertical ? cols : 1;
  const int across = vertical ? 1 : cols;

  Reserve res;
  Bits used;
  Bits claimed;  // exposed cells of chosen vulnerable placements
  for (int line = 0; line < lines; ++line) {
    const int base = vertical ? line : line * cols;
    auto at = [&](int k) { return base + k * step; };

    for (int k = 0; k < len;) {
      if (!priv.test(at(k))) {
        ++k;
        continue;
      }
      int j = k;
      while (j < len && priv.test(at(j))) ++j;
      const int pairs = (j - k) / 2;
      res.safe += pairs;
      // An odd segment leaves out the cell next to an empty exposed cell,
      // where it can still join a vulnerable placement.
      const int start = (j - k) % 2 == 1 && k > 0 && e.test(at(k - 1)) ? k + 1 : k;
      for (int t = 0; t < 2 * pairs; ++t) used.set(at(start + t));
      k = j;
    }

    auto free_cell = [&](int c) {
      if (!e.test(c) || used.test(c)) return false;
      return priv.test(c) || line == 0 || !claimed.test(c - across);
    };
    for (int k = 0; k + 1 < len;) {
      const int a = at(k);
      const int b = at(k + 1);
      const int exposed = !priv.test(a) + !priv.test(b);
      if (exposed > 0 && free_cell(a) && free_cell(b)) {
        ++res.vulnerable;
        if (exposed == 2) ++res.two_exposed;
        res.cells.set(a);
        res.cells.set(b);
        if (!priv.test(a)) claimed.set(a);
        if (!priv.test(b)) claimed.set(b);
        k += 2;
      } else {
        ++k;
      }
    }
  }
  return res;
}

StaticVerdict verdict_from_bounds(const KnowledgeBounds& b, Player to_move, KnowledgeRules rules) {
  const Player other = opponent(to_move);
  const int s_m = b.safe_lower(to_move);
  const int s_o = b.safe_lower(other);
  const int r_m = b.real_upper(to_move);
  const int r_o = b.real_upper(other);
  if (r_m == 0) return StaticVerdict::MoverLoses;
  if (r_o == 0) return StaticVerdict::MoverWins;
  if (s_m >= r_o + rules.mover_wins_margin) return StaticVerdict::MoverWins;
  if (s_o >= r_m) return StaticVerdict::MoverLoses;
  return StaticVerdict::Unknown;
}

namespace {

// Most moves `attacker` can make while the holder of `res` plays its reserve
// and `kills` of its vulnerable placements are taken away.
int attacker_moves_upper(const Geometry& geo, const Bits& empty, const Reserve& res,
                         Player attacker, int kills, int real_upper) {
  const int avoiding = packed_pairs(geo, empty & ~res.cells, attacker);
  return std::min(real_upper, avoiding + kills + std::min(kills, res.two_exposed));
}

StaticVerdict extended_verdict(const Position& pos, Player to_move, KnowledgeRules rules) {
  const Geometry& geo = pos.geometry();
  const Bits e = pos.empty();
  const Player other = opponent(to_move);
  const int r_m = packed_pairs(geo, e, to_move);
  if (r_m == 0) return StaticVerdict::MoverLoses;
  const int r_o = packed_pairs(geo, e, other);
  if (r_o == 0) return StaticVerdict::MoverWins;

  const Reserve mine = reserve(pos, to_move);
  const int mine_kept = mine.safe + (mine.vulnerable + 1) / 2;
  if (mine_kept >= attacker_moves_upper(geo, e, mine, other, mine.vulnerable / 2, r_o) +
                       rules.mover_wins_margin) {
    return StaticVerdict::MoverWins;
  }
  const Reserve theirs = reserve(pos, other);
  const int theirs_kept = theirs.safe + theirs.vulnerable / 2;
  const int theirs_kills = (theirs.vulnerable + 1) / 2;
  if (theirs_kept >= attacker_moves_upper(geo, e, theirs, to_move, theirs_kills, r_m)) {
    return StaticVerdict::MoverLoses;
  }
  return StaticVerdict::Unknown;
}

}  // namespace

StaticVerdict static_verdict(const Position& pos, Player to_move, KnowledgeRules rules) {
  if (rules.rule_set == RuleSet::Extended) return extended_verdict(pos, to_move, rules);
  return verdict_from_bounds(bounds(pos), to_move, rules);
}

}  // namespace domineering
