#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "domineering/board.hpp"

namespace domineering {

inline constexpr uint64_t kDefaultSeed = 0x5EED'D0A1'2015'0B0BULL;

// Random basis for position keys: one value per cell (occupied) and one for
// Horizontal to move.
class ZobristBasis {
 public:
  explicit ZobristBasis(uint64_t seed = kDefaultSeed);

  uint64_t cell(int i) const { return cells_[i]; }
  uint64_t side() const { return side_; }
  uint64_t seed() const { return seed_; }
  // Salt separating boards of different dimensions with equal occupancy.
  uint64_t dims_salt(BoardDims d) const;

  static constexpr int kSize = kMaxCells + 1;

  bool operator==(const ZobristBasis&) const = default;

 private:
  uint64_t seed_;
  std::array<uint64_t, kMaxCells> cells_{};
  uint64_t side_ = 0;
};

ZobristBasis zobrist_init(uint64_t seed);

struct TTKey {
  uint64_t hash64 = 0;
  bool operator==(const TTKey&) const = default;
};

// Key of (canonical position, player to move); equal for all four symmetric images.
TTKey tt_hash(const ZobristBasis& basis, const Position& pos, Player to_move);
// Same, for an occupancy already known to be canonical.
TTKey tt_hash_canonical(const ZobristBasis& basis, const Geometry& geo, const Bits& canon,
                        Player to_move);

enum class ReplacementScheme : uint8_t { Deep, TwoBig };

const char* to_string(ReplacementScheme s);
ReplacementScheme parse_scheme(std::string_view s);

struct TTConfig {
  int index_bits = 22;
  ReplacementScheme scheme = ReplacementScheme::Deep;

  static constexpr int kMinBits = 10;
  static constexpr int kMaxBits = 30;
};

struct TTEntry {
  // hash64 >> index_bits: everything the bucket index does not already fix.
  uint64_t verify = 0;
  Player result = Player::Vertical;
  uint32_t work = 0;
};

// Saturating conversion of a node count to the stored work measure.
constexpr uint32_t work_of(uint64_t nodes) {
  return nodes > UINT32_MAX ? UINT32_MAX : static_cast<uint32_t>(nodes);
}

class TranspositionTable {
 public:
  // Throws std::invalid_argument when index_bits is outside [10, 30].
  explicit TranspositionTable(TTConfig cfg);

  std::optional<TTEntry> probe(TTKey key) const;
  void store(TTKey key, Player result, uint64_t work);
  void clear();

  const TTConfig& config() const { return cfg_; }
  size_t buckets() const { return size_t{1} << cfg_.index_bits; }
  size_t slots_per_bucket() const { return cfg_.scheme == ReplacementScheme::TwoBig ? 2 : 1; }

  // Stored entries in a bucket, for tests and diagnostics.
  std::vector<TTEntry> bucket(size_t index) const;
  size_t index_of(TTKey key) const { return key.hash64 & mask_; }

 private:
  struct Slot {
    uint64_t verify = 0;
    uint32_t work = 0;
    uint8_t result = 0;
    uint8_t used = 0;
  };

  uint64_t verify_of(TTKey key) const { return key.hash64 >> cfg_.index_bits; }

  TTConfig cfg_;
  uint64_t mask_;
  std::vector<Slot> slots_;
};

}  // namespace domineering
