#include <doctest.h>

#include <optional>

#include "domineering/knowledge.hpp"
#include "domineering/search.hpp"
#include "oracle.hpp"

using namespace domineering;

namespace {

Position middle_column_blocked() { return parse_diagram(".#.\n.#.\n.#.\n"); }

std::vector<BoardDims> boards_up_to(int area) {
  std::vector<BoardDims> out;
  for (int m = 1; m <= area; ++m) {
    for (int n = 1; m * n <= area; ++n) out.push_back({m, n});
  }
  return out;
}

// First position where a static verdict disagrees with the exact winner.
std::optional<std::string> unsound_example(int area, KnowledgeRules rules) {
  for (const BoardDims d : boards_up_to(area)) {
    oracle::Solver exact;
    for (const oracle::Grid& g : oracle::reachable(d.rows, d.cols)) {
      const Position p = oracle::to_position(g);
      for (Player mover : {Player::Vertical, Player::Horizontal}) {
        const StaticVerdict v = static_verdict(p, mover, rules);
        if (v == StaticVerdict::Unknown) continue;
        const bool claims_win = v == StaticVerdict::MoverWins;
        if (claims_win != exact.mover_wins(g, mover)) {
          return to_diagram(p) + to_string(mover) + " to move, verdict " + to_string(v);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("safe_moves_lower examples") {
  CHECK(safe_moves_lower(new_position({2, 1}), Player::Vertical) == 1);
  CHECK(safe_moves_lower(new_position({2, 2}), Player::Vertical) == 0);
  CHECK(safe_moves_lower(middle_column_blocked(), Player::Vertical) == 2);
}

TEST_CASE("real_moves_upper examples") {
  CHECK(real_moves_upper(new_position({1, 5}), Player::Horizontal) == 2);
  CHECK(real_moves_upper(new_position({2, 2}), Player::Horizontal) == 2);
  CHECK(real_moves_upper(new_position({1, 1}), Player::Vertical) == 0);
  CHECK(real_moves_upper(new_position({1, 1}), Player::Horizontal) == 0);
}

TEST_CASE("static_verdict examples") {
  CHECK(static_verdict(new_position({2, 1}), Player::Vertical) == StaticVerdict::MoverWins);
  CHECK(static_verdict(new_position({1, 2}), Player::Vertical) == StaticVerdict::MoverLoses);
  CHECK(static_verdict(new_position({2, 2}), Player::Vertical, {1, RuleSet::Basic}) ==
        StaticVerdict::Unknown);
  // One vertical domino kills both of Horizontal's rows.
  CHECK(static_verdict(new_position({2, 2}), Player::Vertical) == StaticVerdict::MoverWins);
  CHECK(static_verdict(new_position({5, 5}), Player::Vertical) == StaticVerdict::Unknown);
}

TEST_CASE("bounds examples") {
  CHECK(bounds(new_position({2, 2})) == KnowledgeBounds{0, 0, 2, 2});
  CHECK(bounds(new_position({2, 1})) == KnowledgeBounds{1, 0, 1, 0});
  CHECK(bounds(new_position({5, 5})) == KnowledgeBounds{0, 0, 10, 10});
}

TEST_CASE("property: bounds match the run-based reference") {
  oracle::Gen gen(31);
  for (int i = 0; i < 500; ++i) {
    const auto d = gen.dims(16, 16, 256);
    const oracle::Grid g = gen.coin() ? gen.noise(d, gen.uniform(0, 80))
                                      : gen.playout(d, gen.uniform(0, d.area() / 2));
    const Position p = oracle::to_position(g);
    const KnowledgeBounds b = bounds(p);
    for (Player who : {Player::Vertical, Player::Horizontal}) {
      CHECK(b.safe_lower(who) == oracle::safe_lower(g, who));
      CHECK(b.real_upper(who) == oracle::real_upper(g, who));
      CHECK(b.safe_lower(who) <= b.real_upper(who));
      CHECK(static_verdict(p, who, {1, RuleSet::Basic}) == oracle::verdict(g, who));
    }
  }
}

TEST_CASE("property: bounds are invariant under the four symmetries") {
  oracle::Gen gen(32);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen.dims(16, 16, 256);
    const Position p = oracle::to_position(gen.playout(d, gen.uniform(0, d.area() / 2)));
    for (Symmetry s : kAllSymmetries) CHECK(bounds(transform(p, s)) == bounds(p));
  }
}

TEST_CASE("property: monotonicity after a move") {
  oracle::Gen gen(33);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen.dims(10, 10, 100);
    const Position p = oracle::to_position(gen.playout(d, gen.uniform(0, d.area() / 2)));
    for (Player mover : {Player::Vertical, Player::Horizontal}) {
      const Player other = opponent(mover);
      for (const Move m : legal_moves(p, mover)) {
        const Position q = apply_move(p, m);
        CHECK(real_moves_upper(q, mover) <= real_moves_upper(p, mover) - 1);
        CHECK(safe_moves_lower(q, other) >= safe_moves_lower(p, other));
      }
    }
  }
}

TEST_CASE("property: a move inside a protected run") {
  // Odd runs lose exactly one safe move wherever the domino goes. Even runs
  // lose one at an even offset and two at an odd offset, which splits the
  // run into two odd pieces.
  oracle::Gen gen(34);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto d = gen.dims(12, 12, 144);
    const oracle::Grid g = gen.noise(d, gen.uniform(30, 80));
    const Position p = oracle::to_position(g);
    for (Player mover : {Player::Vertical, Player::Horizontal}) {
      const bool vert = mover == Player::Vertical;
      const int before = safe_moves_lower(p, mover);
      for (const auto& [r, c] : oracle::moves(g, mover)) {
        // Walk back to the start of the run holding the anchor.
        int r0 = r, c0 = c;
        while (g.empty(vert ? r0 - 1 : r0, vert ? c0 : c0 - 1)) vert ? --r0 : --c0;
        int len = 0;
        bool prot = true;
        for (int k = 0; g.empty(vert ? r0 + k : r0, vert ? c0 : c0 + k); ++k) {
          const int rr = vert ? r0 + k : r0, cc = vert ? c0 : c0 + k;
          if (vert ? (g.empty(rr, cc - 1) || g.empty(rr, cc + 1))
                   : (g.empty(rr - 1, cc) || g.empty(rr + 1, cc))) {
            prot = false;
          }
          ++len;
        }
        if (!prot) continue;
        const int offset = vert ? r - r0 : c - c0;
        const int after = safe_moves_lower(apply_move(p, make_move(mover, r, c, g.cols)), mover);
        const int expected = len % 2 == 1 ? 1 : (offset % 2 == 0 ? 1 : 2);
        CHECK(before - after == expected);
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("soundness: static verdicts agree with exhaustive search, area <= 16") {
  for (RuleSet rs : {RuleSet::Basic, RuleSet::Extended}) {
    const auto bad = unsound_example(16, KnowledgeRules{1, rs});
    INFO(std::string(to_string(rs)) << ": " << bad.value_or(""));
    CHECK_FALSE(bad.has_value());
  }
}

TEST_CASE("property: extended verdicts agree with brute force on random positions") {
  oracle::Gen gen(35);
  int decided = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto d = gen.dims(8, 8, 64);
    oracle::Grid g = gen.playout(d, gen.uniform(0, d.area() / 2));
    const Position p = oracle::to_position(g);
    if (p.empty().count() > 18) continue;
    for (Player mover : {Player::Vertical, Player::Horizontal}) {
      const StaticVerdict v = static_verdict(p, mover);
      if (v == StaticVerdict::Unknown) continue;
      ++decided;
      const Player winner = brute_force_oracle(p, mover);
      INFO(to_diagram(p) << to_string(mover) << " to move");
      CHECK((v == StaticVerdict::MoverWins) == (winner == mover));
    }
  }
  CHECK(decided > 500);
}

TEST_CASE("property: extended rules decide everything basic rules decide") {
  oracle::Gen gen(36);
  int gained = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto d = gen.dims(12, 12, 144);
    const oracle::Grid g = gen.coin() ? gen.noise(d, gen.uniform(0, 80))
                                      : gen.playout(d, gen.uniform(0, d.area() / 2));
    const Position p = oracle::to_position(g);
    for (Player who : {Player::Vertical, Player::Horizontal}) {
      const StaticVerdict basic = static_verdict(p, who, {1, RuleSet::Basic});
      const StaticVerdict ext = static_verdict(p, who, {1, RuleSet::Extended});
      if (basic != StaticVerdict::Unknown) CHECK(ext == basic);
      if (basic == StaticVerdict::Unknown && ext != StaticVerdict::Unknown) ++gained;
    }
  }
  CHECK(gained > 0);
}

TEST_CASE("reserve examples") {
  const Position split = middle_column_blocked();
  CHECK(reserve(split, Player::Vertical) == Reserve{2, 0, 0, Bits{}});
  CHECK(reserve(split, Player::Horizontal) == Reserve{0, 0, 0, Bits{}});
  CHECK(reserve(new_position({1, 2}), Player::Horizontal).safe == 1);

  const Reserve square = reserve(new_position({2, 2}), Player::Vertical);
  CHECK(square.safe == 0);
  CHECK(square.vulnerable == 1);
  CHECK(square.two_exposed == 1);
  CHECK(square.cells.count() == 2);
}

TEST_CASE("property: reserve structure") {
  oracle::Gen gen(37);
  for (int i = 0; i < 500; ++i) {
    const auto d = gen.dims(16, 16, 256);
    const oracle::Grid g = gen.coin() ? gen.noise(d, gen.uniform(0, 80))
                                      : gen.playout(d, gen.uniform(0, d.area() / 2));
    const Position p = oracle::to_position(g);
    const Bits e = p.empty();
    for (Player who : {Player::Vertical, Player::Horizontal}) {
      const Reserve r = reserve(p, who);
      CHECK(r.safe == oracle::private_pairs(g, who));
      CHECK(r.cells.count() == 2 * r.vulnerable);
      CHECK((r.cells & ~e).none());
      CHECK(r.two_exposed <= r.vulnerable);
      CHECK(r.safe + r.vulnerable <= real_moves_upper(p, who));
      CHECK(r.safe >= safe_moves_lower(p, who));
    }
  }
}

TEST_CASE("mutation: mover-wins margin 0 is caught") {
  for (RuleSet rs : {RuleSet::Basic, RuleSet::Extended}) {
    const auto bad = unsound_example(8, KnowledgeRules{0, rs});
    REQUIRE(bad.has_value());
    MESSAGE(std::string(to_string(rs)) << " counterexample:\n" << *bad);
  }
}

TEST_CASE("rule set names") {
  CHECK(parse_rule_set("basic") == RuleSet::Basic);
  CHECK(parse_rule_set("extended") == RuleSet::Extended);
  CHECK(std::string(to_string(RuleSet::Extended)) == "extended");
  CHECK_THROWS_AS(parse_rule_set("clever"), std::invalid_argument);
}

TEST_CASE("packed_pairs and unprotected cells") {
  const Position p = parse_diagram("....#\n.#...\n");
  const Geometry& geo = p.geometry();
  CHECK(packed_pairs(geo, p.empty(), Player::Horizontal) == 3);
  CHECK(packed_pairs(geo, p.empty(), Player::Vertical) == 3);
  const Bits bad = unprotected_run_cells(geo, p.empty(), Player::Horizontal);
  // Both rows touch an empty vertical neighbour somewhere, so every run is exposed.
  CHECK(bad == p.empty());
}
