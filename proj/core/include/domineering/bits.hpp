#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace domineering {

inline constexpr int kMaxCells = 256;

// Fixed 256-bit set. Bit i is cell i in row-major order.
class Bits {
 public:
  static constexpr int kWords = kMaxCells / 64;

  constexpr Bits() = default;

  constexpr bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  constexpr void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  constexpr void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  constexpr bool any() const { return (w_[0] | w_[1] | w_[2] | w_[3]) != 0; }
  constexpr bool none() const { return !any(); }

  constexpr int count() const {
    return std::popcount(w_[0]) + std::popcount(w_[1]) + std::popcount(w_[2]) +
           std::popcount(w_[3]);
  }

  // Index of the lowest set bit; undefined on an empty set.
  constexpr int lowest() const {
    for (int k = 0; k < kWords; ++k) {
      if (w_[k] != 0) return k * 64 + std::countr_zero(w_[k]);
    }
    return kMaxCells;
  }

  constexpr uint64_t word(int k) const { return w_[k]; }
  constexpr void set_word(int k, uint64_t v) { w_[k] = v; }

  // Bit i moves to bit i + n.
  constexpr Bits shifted_up(int n) const {
    Bits r;
    if (n >= kMaxCells) return r;
    const int ws = n >> 6;
    const int bs = n & 63;
    for (int k = kWords - 1; k >= ws; --k) {
      uint64_t v = w_[k - ws] << bs;
      if (bs != 0 && k - ws - 1 >= 0) v |= w_[k - ws - 1] >> (64 - bs);
      r.w_[k] = v;
    }
    return r;
  }

  // Bit i moves to bit i - n.
  constexpr Bits shifted_down(int n) const {
    Bits r;
    if (n >= kMaxCells) return r;
    const int ws = n >> 6;
    const int bs = n & 63;
    for (int k = 0; k + ws < kWords; ++k) {
      uint64_t v = w_[k + ws] >> bs;
      if (bs != 0 && k + ws + 1 < kWords) v |= w_[k + ws + 1] << (64 - bs);
      r.w_[k] = v;
    }
    return r;
  }

  constexpr Bits operator&(const Bits& o) const {
    Bits r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  constexpr Bits operator|(const Bits& o) const {
    Bits r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] | o.w_[k];
    return r;
  }
  constexpr Bits operator^(const Bits& o) const {
    Bits r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = w_[k] ^ o.w_[k];
    return r;
  }
  constexpr Bits operator~() const {
    Bits r;
    for (int k = 0; k < kWords; ++k) r.w_[k] = ~w_[k];
    return r;
  }
  constexpr Bits& operator&=(const Bits& o) { return *this = *this & o; }
  constexpr Bits& operator|=(const Bits& o) { return *this = *this | o; }
  constexpr Bits& operator^=(const Bits& o) { return *this = *this ^ o; }

  constexpr bool operator==(const Bits&) const = default;

  // Lexicographic order of the cell sequence 0, 1, 2, ...: at the first
  // differing cell, the set with the cell empty is smaller.
  constexpr bool lex_less(const Bits& o) const {
    for (int k = 0; k < kWords; ++k) {
      const uint64_t diff = w_[k] ^ o.w_[k];
      if (diff != 0) return (o.w_[k] & (diff & (~diff + 1))) != 0;
    }
    return false;
  }

  template <typename F>
  constexpr void for_each(F&& f) const {
    for (int k = 0; k < kWords; ++k) {
      uint64_t v = w_[k];
      while (v != 0) {
        f(k * 64 + std::countr_zero(v));
        v &= v - 1;
      }
    }
  }

  struct Hash {
    size_t operator()(const Bits& b) const {
      uint64_t h = 0;
      for (int k = 0; k < kWords; ++k) h = (h ^ b.w_[k]) * 0x9E3779B97F4A7C15ULL;
      return static_cast<size_t>(h ^ (h >> 29));
    }
  };

 private:
  std::array<uint64_t, kWords> w_{};
};

}  // namespace domineering
