#include <benchmark/benchmark.h>

#include <random>

#include "domineering/knowledge.hpp"
#include "domineering/search.hpp"

using namespace domineering;

namespace {

// A mid-game 8x8 position reached by a fixed random playout.
Position midgame(int plies) {
  std::mt19937_64 rng(7);
  Position p = new_position({8, 8});
  Player mover = Player::Vertical;
  for (int i = 0; i < plies; ++i) {
    const MoveList ms = legal_moves(p, mover);
    if (ms.empty()) break;
    p.place(ms[static_cast<int>(rng() % ms.size())]);
    mover = opponent(mover);
  }
  return p;
}

void BM_LegalMoves(benchmark::State& state) {
  const Position p = midgame(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(legal_moves(p, Player::Vertical));
}
BENCHMARK(BM_LegalMoves)->Arg(0)->Arg(10);

void BM_Canonical(benchmark::State& state) {
  const Position p = midgame(8);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_bits(p.geometry(), p.occupied()));
}
BENCHMARK(BM_Canonical);

void BM_Bounds(benchmark::State& state) {
  const Position p = midgame(12);
  for (auto _ : state) benchmark::DoNotOptimize(bounds(p));
}
BENCHMARK(BM_Bounds);

void BM_Reserve(benchmark::State& state) {
  const Position p = midgame(12);
  for (auto _ : state) benchmark::DoNotOptimize(reserve(p, Player::Vertical));
}
BENCHMARK(BM_Reserve);

void BM_StaticVerdict(benchmark::State& state) {
  const Position p = midgame(12);
  const KnowledgeRules rules{1, static_cast<RuleSet>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(static_verdict(p, Player::Vertical, rules));
}
BENCHMARK(BM_StaticVerdict)->Arg(0)->Arg(1);

void BM_SolveSquare(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SolveConfig cfg;
  cfg.tt.index_bits = 18;
  uint64_t nodes = 0;
  for (auto _ : state) nodes = solve(new_position({n, n}), Player::Vertical, cfg).nodes;
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_SolveSquare)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
