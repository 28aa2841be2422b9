#include "selftest.hpp"

#include <unordered_map>

namespace domineering::selftest {

struct ExactSolver::Impl {
  BoardDims dims;
  struct Hash {
    size_t operator()(const std::pair<Bits, Player>& k) const {
      return Bits::Hash{}(k.first) ^ static_cast<size_t>(k.second);
    }
  };
  std::unordered_map<std::pair<Bits, Player>, bool, Hash> memo;

  bool mover_wins(Position& pos, Player mover) {
    const auto key = std::make_pair(pos.occupied(), mover);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool win = false;
    for (const Move m : legal_moves(pos, mover)) {
      pos.place(m);
      const bool reply = mover_wins(pos, opponent(mover));
      pos.remove(m);
      if (!reply) {
        win = true;
        break;
      }
    }
    memo.emplace(key, win);
    return win;
  }
};

ExactSolver::ExactSolver(BoardDims dims) : impl_(std::make_shared<Impl>()) { impl_->dims = dims; }

Player ExactSolver::winner(const Position& pos, Player to_move) {
  if (!(pos.dims() == impl_->dims)) throw std::invalid_argument("board size mismatch");
  Position work = pos;
  return impl_->mover_wins(work, to_move) ? to_move : opponent(to_move);
}

size_t ExactSolver::memo_size() const { return impl_->memo.size(); }

Position random_position(BoardDims dims, int plies, std::mt19937_64& rng) {
  Position pos = new_position(dims);
  Player mover = (rng() & 1) ? Player::Vertical : Player::Horizontal;
  for (int i = 0; i < plies; ++i) {
    const MoveList moves = legal_moves(pos, mover);
    if (moves.empty()) break;
    pos.place(moves[static_cast<int>(rng() % moves.size())]);
    mover = opponent(mover);
  }
  return pos;
}

namespace {

std::vector<BoardDims> boards_up_to(int area_limit) {
  std::vector<BoardDims> out;
  for (int m = 1; m <= area_limit; ++m) {
    for (int n = 1; m * n <= area_limit; ++n) out.push_back({m, n});
  }
  return out;
}

std::vector<SolveConfig> all_configs(KnowledgeRules rules) {
  std::vector<SolveConfig> out;
  for (bool knowledge : {true, false}) {
    for (int table = 0; table < 3; ++table) {
      for (MoveOrder order : {MoveOrder::RowMajor, MoveOrder::Heuristic}) {
        SolveConfig cfg;
        cfg.use_knowledge = knowledge;
        cfg.use_tt = table != 0;
        cfg.tt.index_bits = TTConfig::kMinBits;
        cfg.tt.scheme = table == 2 ? ReplacementScheme::TwoBig : ReplacementScheme::Deep;
        cfg.order = order;
        cfg.rules = rules;
        out.push_back(cfg);
      }
    }
  }
  SolveConfig basic = basic_config();
  basic.tt.index_bits = TTConfig::kMinBits;
  basic.rules.mover_wins_margin = rules.mover_wins_margin;
  out.push_back(basic);
  return out;
}

std::string describe(const SolveConfig& cfg) {
  std::string s = cfg.use_knowledge ? "knowledge" : "no-knowledge";
  s += cfg.use_tt ? std::string(", tt ") + to_string(cfg.tt.scheme) : ", no tt";
  s += std::string(", ") + to_string(cfg.order) + ", " + to_string(cfg.rules.rule_set) + " rules";
  return s;
}

void collect_reachable(Position& pos, Player mover, std::unordered_map<Bits, bool, Bits::Hash>& seen,
                       std::vector<Bits>& out) {
  if (!seen.emplace(pos.occupied(), true).second) return;
  out.push_back(pos.occupied());
  for (Player p : {mover, opponent(mover)}) {
    for (const Move m : legal_moves(pos, p)) {
      pos.place(m);
      collect_reachable(pos, opponent(p), seen, out);
      pos.remove(m);
    }
  }
}

}  // namespace

SuiteResult oracle_sweep(int area_limit, KnowledgeRules rules) {
  SuiteResult res{"oracle equivalence", 0, {}};
  const std::vector<SolveConfig> configs = all_configs(rules);
  for (const BoardDims d : boards_up_to(area_limit)) {
    const Position pos = new_position(d);
    for (Player starter : {Player::Vertical, Player::Horizontal}) {
      const Player truth = brute_force_oracle(pos, starter);
      for (const SolveConfig& cfg : configs) {
        ++res.checks;
        const SolveReport rep = solve(pos, starter, cfg);
        if (rep.winner != truth) {
          res.failures.push_back({res.name,
                                  to_string(d) + ", " + to_string(starter) + " to move, " +
                                      describe(cfg) + ": solver says " +
                                      (rep.winner ? to_string(*rep.winner) : "undecided") +
                                      ", oracle says " + to_string(truth),
                                  to_diagram(pos)});
          return res;
        }
      }
    }
  }
  return res;
}

SuiteResult knowledge_sweep(int area_limit, KnowledgeRules rules) {
  SuiteResult res{"static verdict soundness", 0, {}};
  for (const BoardDims d : boards_up_to(area_limit)) {
    ExactSolver exact(d);
    Position root = new_position(d);
    std::unordered_map<Bits, bool, Bits::Hash> seen;
    std::vector<Bits> reachable;
    collect_reachable(root, Player::Vertical, seen, reachable);
    for (const Bits& occ : reachable) {
      const Position pos(d, occ);
      for (Player mover : {Player::Vertical, Player::Horizontal}) {
        const StaticVerdict v = static_verdict(pos, mover, rules);
        if (v == StaticVerdict::Unknown) continue;
        ++res.checks;
        const Player claimed = v == StaticVerdict::MoverWins ? mover : opponent(mover);
        const Player truth = exact.winner(pos, mover);
        if (claimed != truth) {
          res.failures.push_back({res.name,
                                  to_string(d) + ", " + to_string(mover) + " to move: verdict " +
                                      to_string(v) + ", exact winner " + to_string(truth),
                                  to_diagram(pos)});
          return res;
        }
      }
    }
  }
  return res;
}

SuiteResult symmetry_duality(int area_limit, int samples, uint64_t seed) {
  SuiteResult res{"symmetry and duality", 0, {}};
  const std::vector<BoardDims> boards = boards_up_to(area_limit);
  std::mt19937_64 rng(seed);
  SolveConfig cfg;
  cfg.tt.index_bits = 16;
  for (int i = 0; i < samples; ++i) {
    const BoardDims d = boards[rng() % boards.size()];
    const int plies = static_cast<int>(rng() % (d.area() / 2 + 1));
    const Position pos = random_position(d, plies, rng);
    for (Player mover : {Player::Vertical, Player::Horizontal}) {
      const Player w = *solve(pos, mover, cfg).winner;
      for (Symmetry s : kAllSymmetries) {
        ++res.checks;
        const Player ws = *solve(transform(pos, s), mover, cfg).winner;
        if (ws != w) {
          res.failures.push_back({res.name,
                                  to_string(d) + ", " + to_string(mover) + " to move: " +
                                      to_string(s) + " image changes the winner",
                                  to_diagram(pos)});
          return res;
        }
      }
      ++res.checks;
      const Player wt = *solve(transpose(pos), opponent(mover), cfg).winner;
      if (wt != opponent(w)) {
        res.failures.push_back({res.name,
                                to_string(d) + ", " + to_string(mover) +
                                    " to move: transpose with roles swapped disagrees",
                                to_diagram(pos)});
        return res;
      }
    }
  }
  return res;
}

std::vector<SuiteResult> run_all(int area_limit, KnowledgeRules rules,
                                 const std::function<void(const SuiteResult&)>& progress) {
  std::vector<SuiteResult> out;
  auto add = [&](SuiteResult r) {
    if (progress) progress(r);
    out.push_back(std::move(r));
  };
  add(knowledge_sweep(area_limit, rules));
  add(oracle_sweep(area_limit, rules));
  add(symmetry_duality(area_limit, 200, kDefaultSeed));
  return out;
}

}  // namespace domineering::selftest
