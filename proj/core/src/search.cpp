#include "domineering/search.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace domineering {

const char* to_string(MoveOrder o) { return o == MoveOrder::RowMajor ? "rowmajor" : "heuristic"; }

MoveOrder parse_order(std::string_view s) {
  if (s == "rowmajor") return MoveOrder::RowMajor;
  if (s == "heuristic") return MoveOrder::Heuristic;
  throw std::invalid_argument("unknown move order '" + std::string(s) +
                              "' (expected rowmajor or heuristic)");
}

SolveConfig basic_config() {
  SolveConfig cfg;
  cfg.rules.rule_set = RuleSet::Basic;
  cfg.screen_children = false;
  cfg.probe_children = false;
  cfg.single_safe_move = false;
  cfg.history = false;
  return cfg;
}

namespace {

// Scores relative to the parent are shifted by a constant, so ranking on the
// child values alone gives the same order as ranking on the deltas.
int child_score(const Position& child, Player mover, RuleSet rule_set) {
  const Geometry& geo = child.geometry();
  const Bits e = child.empty();
  const Bits safe_cells = rule_set == RuleSet::Extended
                              ? private_cells(geo, e, mover)
                              : e & ~unprotected_run_cells(geo, e, mover);
  return packed_pairs(geo, safe_cells, mover) - packed_pairs(geo, e, opponent(mover));
}

// Stable descending sort of moves[0..n) by (primary, secondary).
template <typename Secondary>
void sort_by_score(Move* moves, int* scores, Secondary* tie, int n) {
  for (int i = 1; i < n; ++i) {
    const Move m = moves[i];
    const int s = scores[i];
    const Secondary t = tie[i];
    int j = i - 1;
    while (j >= 0 && (scores[j] < s || (scores[j] == s && tie[j] < t))) {
      moves[j + 1] = moves[j];
      scores[j + 1] = scores[j];
      tie[j + 1] = tie[j];
      --j;
    }
    moves[j + 1] = m;
    scores[j + 1] = s;
    tie[j + 1] = t;
  }
}

// Drops moves whose child is a symmetric image of an earlier child.
void dedupe_in_place(Position& pos, MoveList& moves) {
  const Geometry& geo = pos.geometry();
  std::array<Bits, MoveList::kCapacity> seen;
  int kept = 0;
  for (int i = 0; i < moves.size(); ++i) {
    pos.place(moves[i]);
    const Bits canon = canonical_bits(geo, pos.occupied());
    pos.remove(moves[i]);
    bool dup = false;
    for (int k = 0; k < kept && !dup; ++k) dup = seen[k] == canon;
    if (!dup) {
      seen[kept] = canon;
      moves[kept++] = moves[i];
    }
  }
  moves.resize(kept);
}

template <typename Keep>
void filter(MoveList& moves, Keep keep) {
  int kept = 0;
  for (int i = 0; i < moves.size(); ++i) {
    if (keep(moves[i])) moves[kept++] = moves[i];
  }
  moves.resize(kept);
}

struct NodeLimitReached {};

class Solver {
 public:
  Solver(const Position& root, const SolveConfig& cfg)
      : pos_(root),
        geo_(root.geometry()),
        cfg_(cfg),
        basis_(cfg.seed),
        salt_(basis_.dims_salt(geo_.dims)) {
    if (cfg.use_tt) tt_.emplace(cfg.tt);
    for (int s = 0; s < 4; ++s) {
      img_[s] = transform_bits(geo_, root.occupied(), static_cast<Symmetry>(s));
      uint64_t h = 0;
      img_[s].for_each([&](int i) { h ^= basis_.cell(i); });
      hash_[s] = h;
    }
  }

  SolveReport run(Player to_move) {
    SolveReport report;
    const auto start = std::chrono::steady_clock::now();
    try {
      report.winner = mover_wins(to_move) ? to_move : opponent(to_move);
    } catch (const NodeLimitReached&) {
      report.winner.reset();
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    report.nodes = nodes_;
    report.tt_hits = tt_hits_;
    report.static_cutoffs = static_cutoffs_;
    report.screened = screened_;
    return report;
  }

 private:
  void place(Move m) {
    const int a = m.anchor;
    const int b = m.second_cell(geo_.dims.cols);
    pos_.place(m);
    for (int s = 0; s < 4; ++s) {
      const int ia = geo_.image[s][a];
      const int ib = geo_.image[s][b];
      img_[s].set(ia);
      img_[s].set(ib);
      hash_[s] ^= basis_.cell(ia) ^ basis_.cell(ib);
    }
  }

  void remove(Move m) {
    const int a = m.anchor;
    const int b = m.second_cell(geo_.dims.cols);
    pos_.remove(m);
    for (int s = 0; s < 4; ++s) {
      const int ia = geo_.image[s][a];
      const int ib = geo_.image[s][b];
      img_[s].reset(ia);
      img_[s].reset(ib);
      hash_[s] ^= basis_.cell(ia) ^ basis_.cell(ib);
    }
  }

  TTKey key(Player to_move) const {
    int best = 0;
    for (int s = 1; s < 4; ++s) {
      if (img_[s].lex_less(img_[best])) best = s;
    }
    uint64_t h = hash_[best] ^ salt_;
    if (to_move == Player::Horizontal) h ^= basis_.side();
    return TTKey{h};
  }

  bool near_symmetric() const {
    // Two children can only be images of each other under s when the parent
    // and its s-image differ in at most four cells.
    for (int s = 1; s < 4; ++s) {
      if ((img_[s] ^ img_[0]).count() <= 4) return true;
    }
    return false;
  }

  void order(Player mover, MoveList& moves) {
    std::array<int, MoveList::kCapacity> scores;
    std::array<uint64_t, MoveList::kCapacity> tie{};
    const auto& hist = history_[static_cast<int>(mover)];
    for (int i = 0; i < moves.size(); ++i) {
      pos_.place(moves[i]);
      scores[i] = child_score(pos_, mover, cfg_.rules.rule_set);
      pos_.remove(moves[i]);
      if (cfg_.history) tie[i] = hist[moves[i].anchor];
    }
    sort_by_score(moves.begin(), scores.data(), tie.data(), moves.size());
  }

  // Keeps the first move lying in a protected run and starting or ending at
  // the run's end; drops every other protected-run move.
  void keep_single_safe_move(Player mover, MoveList& moves) const {
    const Bits e = pos_.empty();
    const Bits prot = e & ~unprotected_run_cells(geo_, e, mover);
    if (prot.none()) return;
    const int cols = geo_.dims.cols;
    const bool vertical = mover == Player::Vertical;
    const int step = vertical ? cols : 1;
    bool have = false;
    filter(moves, [&](Move m) {
      const int a = m.anchor;
      const int b = m.second_cell(cols);
      if (!prot.test(a) || !prot.test(b)) return true;
      if (have) return false;
      const bool first_in_line = vertical ? a < cols : a % cols == 0;
      const bool last_in_line = vertical ? b >= geo_.dims.area() - cols : b % cols == cols - 1;
      const bool at_end = first_in_line || !prot.test(a - step) || last_in_line ||
                          !prot.test(b + step);
      if (at_end) have = true;
      return at_end;
    });
  }

  bool mover_wins(Player mover) {
    ++nodes_;
    if (cfg_.node_limit && nodes_ > *cfg_.node_limit) throw NodeLimitReached{};
    const uint64_t entry = nodes_;
    const Player other = opponent(mover);

    if (cfg_.use_knowledge) {
      const StaticVerdict v = static_verdict(pos_, mover, cfg_.rules);
      if (v != StaticVerdict::Unknown) {
        ++static_cutoffs_;
        return v == StaticVerdict::MoverWins;
      }
    }

    TTKey k;
    if (tt_) {
      k = key(mover);
      if (auto hit = tt_->probe(k)) {
        ++tt_hits_;
        return hit->result == mover;
      }
    }

    MoveList moves = legal_moves(pos_, mover);
    if (moves.empty()) return false;
    if (cfg_.order == MoveOrder::Heuristic) order(mover, moves);
    if (near_symmetric()) dedupe_in_place(pos_, moves);
    if (cfg_.use_knowledge && cfg_.single_safe_move) keep_single_safe_move(mover, moves);

    bool won_early = false;
    if (tt_ && cfg_.probe_children) {
      filter(moves, [&](Move m) {
        if (won_early) return false;
        place(m);
        const auto hit = tt_->probe(key(other));
        remove(m);
        if (!hit) return true;
        ++tt_hits_;
        if (hit->result == mover) won_early = true;
        return false;
      });
    }
    if (!won_early && cfg_.use_knowledge && cfg_.screen_children) {
      filter(moves, [&](Move m) {
        if (won_early) return false;
        pos_.place(m);
        const StaticVerdict v = static_verdict(pos_, other, cfg_.rules);
        pos_.remove(m);
        if (v == StaticVerdict::Unknown) return true;
        ++screened_;
        if (v == StaticVerdict::MoverLoses) won_early = true;
        return false;
      });
    }

    bool win = won_early;
    for (int i = 0; i < moves.size() && !win; ++i) {
      const uint64_t before = nodes_;
      place(moves[i]);
      const bool reply_wins = mover_wins(other);
      remove(moves[i]);
      if (!reply_wins) {
        win = true;
        if (cfg_.history) history_[static_cast<int>(mover)][moves[i].anchor] += nodes_ - before;
      }
    }
    if (tt_) tt_->store(k, win ? mover : other, nodes_ - entry + 1);
    return win;
  }

  Position pos_;
  const Geometry& geo_;
  SolveConfig cfg_;
  ZobristBasis basis_;
  uint64_t salt_;
  std::optional<TranspositionTable> tt_;
  std::array<Bits, 4> img_;
  std::array<uint64_t, 4> hash_{};
  std::array<std::array<uint64_t, kMaxCells>, 2> history_{};
  uint64_t nodes_ = 0;
  uint64_t tt_hits_ = 0;
  uint64_t static_cutoffs_ = 0;
  uint64_t screened_ = 0;
};

bool oracle_wins(Position& pos, Player mover) {
  const MoveList moves = legal_moves(pos, mover);
  for (const Move m : moves) {
    pos.place(m);
    const bool reply_wins = oracle_wins(pos, opponent(mover));
    pos.remove(m);
    if (!reply_wins) return true;
  }
  return false;
}

}  // namespace

SolveReport solve(const Position& pos, Player to_move, const SolveConfig& cfg) {
  Solver solver(pos, cfg);
  return solver.run(to_move);
}

std::vector<Move> order_moves(const Position& pos, Player player, std::vector<Move> moves,
                              MoveOrder order, RuleSet rule_set) {
  if (order == MoveOrder::RowMajor) return moves;
  Position work = pos;
  std::vector<int> scores(moves.size());
  std::vector<int> tie(moves.size(), 0);
  for (size_t i = 0; i < moves.size(); ++i) {
    work.place(moves[i]);
    scores[i] = child_score(work, player, rule_set);
    work.remove(moves[i]);
  }
  sort_by_score(moves.data(), scores.data(), tie.data(), static_cast<int>(moves.size()));
  return moves;
}

std::vector<Move> dedupe_symmetric(const Position& pos, std::vector<Move> moves) {
  MoveList list;
  for (const Move m : moves) list.push_back(m);
  Position work = pos;
  dedupe_in_place(work, list);
  return list.to_vector();
}

Player brute_force_oracle(const Position& pos, Player to_move) {
  const int empty = pos.empty().count();
  if (empty > kOracleMaxEmpty) {
    throw OracleRefused("oracle refuses " + std::to_string(empty) + " empty cells (limit " +
                        std::to_string(kOracleMaxEmpty) + ")");
  }
  Position work = pos;
  return oracle_wins(work, to_move) ? to_move : opponent(to_move);
}

}  // namespace domineering
