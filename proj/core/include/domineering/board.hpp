#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "domineering/bits.hpp"

namespace domineering {

enum class Player : uint8_t { Vertical, Horizontal };

constexpr Player opponent(Player p) {
  return p == Player::Vertical ? Player::Horizontal : Player::Vertical;
}

const char* to_string(Player p);
// 'V' or 'H'.
char to_char(Player p);
// Accepts V/H and vertical/horizontal in any case.
Player parse_player(std::string_view s);

class CapacityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IllegalMoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct BoardDims {
  int rows = 0;
  int cols = 0;

  constexpr int area() const { return rows * cols; }
  constexpr bool fits() const { return rows >= 1 && cols >= 1 && area() <= kMaxCells; }
  constexpr BoardDims transposed() const { return {cols, rows}; }
  constexpr bool operator==(const BoardDims&) const = default;
};

std::string to_string(BoardDims d);

// Board symmetries that keep each player's orientation. Transposition is not
// one of them; it swaps the players and lives in the outcome module.
enum class Symmetry : uint8_t { Identity, MirrorCols, MirrorRows, Rotate180 };

inline constexpr std::array<Symmetry, 4> kAllSymmetries = {
    Symmetry::Identity, Symmetry::MirrorCols, Symmetry::MirrorRows, Symmetry::Rotate180};

const char* to_string(Symmetry s);

// Group product: applying `first` then `second`.
Symmetry compose(Symmetry first, Symmetry second);

// Per-dimension masks and cell permutations, shared by all positions of one size.
struct Geometry {
  BoardDims dims;
  Bits inside;
  Bits not_first_col;
  Bits not_last_col;
  // image[s][i] is where cell i lands under symmetry s.
  std::array<std::array<uint8_t, kMaxCells>, 4> image{};

  static const Geometry& of(BoardDims dims);

  // Along-run shifts. `fwd` moves each cell to its successor in the player's
  // orientation (right for Horizontal, down for Vertical); `back` to its
  // predecessor. Results are clipped to the board.
  Bits fwd(const Bits& x, Player p) const {
    return p == Player::Horizontal ? x.shifted_up(1) & not_first_col
                                   : x.shifted_up(dims.cols) & inside;
  }
  Bits back(const Bits& x, Player p) const {
    return p == Player::Horizontal ? x.shifted_down(1) & not_last_col
                                   : x.shifted_down(dims.cols);
  }
};

struct Move {
  Player player = Player::Vertical;
  // Upper cell for Vertical, left cell for Horizontal.
  uint16_t anchor = 0;

  constexpr int second_cell(int cols) const {
    return player == Player::Vertical ? anchor + cols : anchor + 1;
  }
  constexpr bool operator==(const Move&) const = default;
};

inline Move make_move(Player p, int row, int col, int cols) {
  return Move{p, static_cast<uint16_t>(row * cols + col)};
}

class MoveList {
 public:
  static constexpr int kCapacity = kMaxCells;

  void push_back(Move m) { moves_[size_++] = m; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  void clear() { size_ = 0; }
  void resize(int n) { size_ = n; }
  Move& operator[](int i) { return moves_[i]; }
  const Move& operator[](int i) const { return moves_[i]; }
  Move* begin() { return moves_.data(); }
  Move* end() { return moves_.data() + size_; }
  const Move* begin() const { return moves_.data(); }
  const Move* end() const { return moves_.data() + size_; }

  std::vector<Move> to_vector() const { return {begin(), end()}; }

 private:
  std::array<Move, kCapacity> moves_;
  int size_ = 0;
};

class Position {
 public:
  // Throws CapacityError when dims are not 1 <= rows, cols and rows*cols <= 256.
  explicit Position(BoardDims dims);
  // Arbitrary initial occupancy, e.g. pre-blocked cells. Bits outside the
  // board are rejected.
  Position(BoardDims dims, const Bits& occupied);

  BoardDims dims() const { return geo_->dims; }
  int rows() const { return geo_->dims.rows; }
  int cols() const { return geo_->dims.cols; }
  int area() const { return geo_->dims.area(); }
  const Geometry& geometry() const { return *geo_; }

  const Bits& occupied() const { return occ_; }
  Bits empty() const { return ~occ_ & geo_->inside; }
  bool is_occupied(int row, int col) const { return occ_.test(row * cols() + col); }
  int index(int row, int col) const { return row * cols() + col; }

  // Unchecked in-place placement for search loops.
  void place(Move m) {
    occ_.set(m.anchor);
    occ_.set(m.second_cell(cols()));
  }
  void remove(Move m) {
    occ_.reset(m.anchor);
    occ_.reset(m.second_cell(cols()));
  }

  // Anchor bitset of all legal placements for `p`.
  Bits anchors(Player p) const {
    const Bits e = empty();
    return e & geo_->back(e, p);
  }

  bool operator==(const Position& o) const {
    return geo_->dims == o.geo_->dims && occ_ == o.occ_;
  }

 private:
  const Geometry* geo_;
  Bits occ_;
};

Position new_position(BoardDims dims);

// Row-major by anchor.
MoveList legal_moves(const Position& pos, Player player);

bool is_legal(const Position& pos, Move move);

// Throws IllegalMoveError when a covered cell is off-board or occupied.
Position apply_move(const Position& pos, Move move);

// Throws InconsistencyError when the two cells are not both occupied.
Position undo_move(const Position& pos, Move move);

Position transform(const Position& pos, Symmetry sym);
Bits transform_bits(const Geometry& geo, const Bits& occ, Symmetry sym);

struct Canonical {
  Position position;
  Symmetry symmetry;
};

// Lexicographically smallest occupancy among the four images (see Bits::lex_less);
// ties go to the earlier symmetry in enum order.
Canonical canonical(const Position& pos);
Bits canonical_bits(const Geometry& geo, const Bits& occ);

// m×n -> n×m; cell (r, c) moves to (c, r). Swaps the players' roles.
Position transpose(const Position& pos);

struct Run {
  int length = 0;
  // No cell of the run has an empty neighbour across the run direction,
  // so the opponent can never cover any of it.
  bool is_protected = false;

  bool operator==(const Run&) const = default;
};

// Horizontal: maximal empty runs per row, rows top to bottom. Vertical:
// maximal empty runs per column, columns left to right.
std::vector<Run> empty_runs(const Position& pos, Player player);

// '.' empty, '#' occupied, one line per row.
std::string to_diagram(const Position& pos);
// Blank lines and surrounding whitespace are ignored. Rows must be equal length.
Position parse_diagram(std::string_view text);

}  // namespace domineering
