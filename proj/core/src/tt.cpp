#include "domineering/tt.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace domineering {

namespace {

// splitmix64 finalizer
uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

ZobristBasis::ZobristBasis(uint64_t seed) : seed_(seed) {
  std::mt19937_64 rng(seed);
  for (auto& v : cells_) v = rng();
  side_ = rng();
}

uint64_t ZobristBasis::dims_salt(BoardDims d) const {
  return mix64(side_ ^ (static_cast<uint64_t>(d.rows) << 32 | static_cast<uint64_t>(d.cols)));
}

ZobristBasis zobrist_init(uint64_t seed) { return ZobristBasis(seed); }

TTKey tt_hash_canonical(const ZobristBasis& basis, const Geometry& geo, const Bits& canon,
                        Player to_move) {
  uint64_t h = basis.dims_salt(geo.dims);
  canon.for_each([&](int i) { h ^= basis.cell(i); });
  if (to_move == Player::Horizontal) h ^= basis.side();
  return TTKey{h};
}

TTKey tt_hash(const ZobristBasis& basis, const Position& pos, Player to_move) {
  const Geometry& geo = pos.geometry();
  return tt_hash_canonical(basis, geo, canonical_bits(geo, pos.occupied()), to_move);
}

const char* to_string(ReplacementScheme s) {
  return s == ReplacementScheme::Deep ? "deep" : "twobig";
}

ReplacementScheme parse_scheme(std::string_view s) {
  if (s == "deep") return ReplacementScheme::Deep;
  if (s == "twobig") return ReplacementScheme::TwoBig;
  throw std::invalid_argument("unknown replacement scheme '" + std::string(s) +
                              "' (expected deep or twobig)");
}

TranspositionTable::TranspositionTable(TTConfig cfg) : cfg_(cfg) {
  if (cfg.index_bits < TTConfig::kMinBits || cfg.index_bits > TTConfig::kMaxBits) {
    throw std::invalid_argument("tt index bits must be in [" + std::to_string(TTConfig::kMinBits) +
                                ", " + std::to_string(TTConfig::kMaxBits) + "], got " +
                                std::to_string(cfg.index_bits));
  }
  mask_ = (uint64_t{1} << cfg.index_bits) - 1;
  slots_.resize(buckets() * slots_per_bucket());
}

std::optional<TTEntry> TranspositionTable::probe(TTKey key) const {
  const uint64_t verify = verify_of(key);
  const size_t base = index_of(key) * slots_per_bucket();
  for (size_t k = 0; k < slots_per_bucket(); ++k) {
    const Slot& s = slots_[base + k];
    if (s.used && s.verify == verify) {
      return TTEntry{s.verify, static_cast<Player>(s.result), s.work};
    }
  }
  return std::nullopt;
}

void TranspositionTable::store(TTKey key, Player result, uint64_t work) {
  const Slot incoming{verify_of(key), work_of(work), static_cast<uint8_t>(result), 1};
  const size_t base = index_of(key) * slots_per_bucket();

  if (cfg_.scheme == ReplacementScheme::Deep) {
    Slot& s = slots_[base];
    if (!s.used || incoming.work >= s.work) s = incoming;
    return;
  }

  // TwoBig: the newest entry is always kept. It refreshes a slot holding the
  // same position, fills an empty slot, or else evicts the one with less work.
  Slot& first = slots_[base];
  Slot& second = slots_[base + 1];
  for (Slot* s : {&first, &second}) {
    if (s->used && s->verify == incoming.verify) {
      *s = incoming;
      return;
    }
  }
  if (!first.used) {
    first = incoming;
  } else if (!second.used) {
    second = incoming;
  } else if (first.work < second.work) {
    first = incoming;
  } else {
    second = incoming;
  }
}

void TranspositionTable::clear() { std::fill(slots_.begin(), slots_.end(), Slot{}); }

std::vector<TTEntry> TranspositionTable::bucket(size_t index) const {
  std::vector<TTEntry> out;
  const size_t base = index * slots_per_bucket();
  for (size_t k = 0; k < slots_per_bucket(); ++k) {
    const Slot& s = slots_[base + k];
    if (s.used) out.push_back(TTEntry{s.verify, static_cast<Player>(s.result), s.work});
  }
  return out;
}

}  // namespace domineering
