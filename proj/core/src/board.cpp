#include "domineering/board.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

namespace domineering {

const char* to_string(Player p) { return p == Player::Vertical ? "Vertical" : "Horizontal"; }

char to_char(Player p) { return p == Player::Vertical ? 'V' : 'H'; }

Player parse_player(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "v" || lower == "vertical") return Player::Vertical;
  if (lower == "h" || lower == "horizontal") return Player::Horizontal;
  throw std::invalid_argument("unknown player '" + std::string(s) + "'");
}

std::string to_string(BoardDims d) {
  return std::to_string(d.rows) + "x" + std::to_string(d.cols);
}

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Identity: return "Identity";
    case Symmetry::MirrorCols: return "MirrorCols";
    case Symmetry::MirrorRows: return "MirrorRows";
    case Symmetry::Rotate180: return "Rotate180";
  }
  return "?";
}

Symmetry compose(Symmetry first, Symmetry second) {
  // Klein four-group: encode as (mirror cols, mirror rows) bit pair.
  auto bits = [](Symmetry s) {
    switch (s) {
      case Symmetry::Identity: return 0;
      case Symmetry::MirrorCols: return 1;
      case Symmetry::MirrorRows: return 2;
      case Symmetry::Rotate180: return 3;
    }
    return 0;
  };
  switch (bits(first) ^ bits(second)) {
    case 1: return Symmetry::MirrorCols;
    case 2: return Symmetry::MirrorRows;
    case 3: return Symmetry::Rotate180;
    default: return Symmetry::Identity;
  }
}

namespace {

std::unique_ptr<Geometry> build_geometry(BoardDims d) {
  auto g = std::make_unique<Geometry>();
  g->dims = d;
  for (int r = 0; r < d.rows; ++r) {
    for (int c = 0; c < d.cols; ++c) {
      const int i = r * d.cols + c;
      g->inside.set(i);
      if (c != 0) g->not_first_col.set(i);
      if (c != d.cols - 1) g->not_last_col.set(i);
      const int mr = d.rows - 1 - r;
      const int mc = d.cols - 1 - c;
      g->image[static_cast<int>(Symmetry::Identity)][i] = static_cast<uint8_t>(i);
      g->image[static_cast<int>(Symmetry::MirrorCols)][i] = static_cast<uint8_t>(r * d.cols + mc);
      g->image[static_cast<int>(Symmetry::MirrorRows)][i] = static_cast<uint8_t>(mr * d.cols + c);
      g->image[static_cast<int>(Symmetry::Rotate180)][i] = static_cast<uint8_t>(mr * d.cols + mc);
    }
  }
  return g;
}

struct GeometryTable {
  // Indexed by (rows - 1) * kMaxCells + (cols - 1); only sizes that fit are built.
  std::vector<std::unique_ptr<Geometry>> slots;

  GeometryTable() : slots(static_cast<size_t>(kMaxCells) * kMaxCells) {
    for (int r = 1; r <= kMaxCells; ++r) {
      for (int c = 1; r * c <= kMaxCells; ++c) {
        slots[static_cast<size_t>(r - 1) * kMaxCells + (c - 1)] = build_geometry({r, c});
      }
    }
  }
};

void check_capacity(BoardDims dims) {
  if (!dims.fits()) {
    throw CapacityError("board " + to_string(dims) + " exceeds solver capacity (" +
                        std::to_string(kMaxCells) + " cells, positive dimensions)");
  }
}

}  // namespace

const Geometry& Geometry::of(BoardDims dims) {
  check_capacity(dims);
  static const GeometryTable table;
  return *table.slots[static_cast<size_t>(dims.rows - 1) * kMaxCells + (dims.cols - 1)];
}

Position::Position(BoardDims dims) : geo_(&Geometry::of(dims)) {}

Position::Position(BoardDims dims, const Bits& occupied) : geo_(&Geometry::of(dims)), occ_(occupied) {
  if ((occupied & ~geo_->inside).any()) {
    throw std::invalid_argument("occupancy has cells outside the " + to_string(dims) + " board");
  }
}

Position new_position(BoardDims dims) { return Position(dims); }

MoveList legal_moves(const Position& pos, Player player) {
  MoveList out;
  pos.anchors(player).for_each([&](int i) { out.push_back(Move{player, static_cast<uint16_t>(i)}); });
  return out;
}

bool is_legal(const Position& pos, Move move) {
  const int a = move.anchor;
  if (a < 0 || a >= pos.area()) return false;
  const int c = a % pos.cols();
  const int r = a / pos.cols();
  if (move.player == Player::Vertical && r + 1 >= pos.rows()) return false;
  if (move.player == Player::Horizontal && c + 1 >= pos.cols()) return false;
  return !pos.occupied().test(a) && !pos.occupied().test(move.second_cell(pos.cols()));
}

Position apply_move(const Position& pos, Move move) {
  if (!is_legal(pos, move)) {
    throw IllegalMoveError(std::string("illegal ") + to_string(move.player) + " move at cell " +
                           std::to_string(move.anchor) + " on " + to_string(pos.dims()));
  }
  Position next = pos;
  next.place(move);
  return next;
}

Position undo_move(const Position& pos, Move move) {
  const int a = move.anchor;
  const int r = a / pos.cols();
  const int c = a % pos.cols();
  const bool fits = a < pos.area() &&
                    (move.player == Player::Vertical ? r + 1 < pos.rows() : c + 1 < pos.cols());
  if (!fits || !pos.occupied().test(a) || !pos.occupied().test(move.second_cell(pos.cols()))) {
    throw InconsistencyError("undo of a placement whose cells are not occupied (cell " +
                             std::to_string(a) + ")");
  }
  Position prev = pos;
  prev.remove(move);
  return prev;
}

Bits transform_bits(const Geometry& geo, const Bits& occ, Symmetry sym) {
  if (sym == Symmetry::Identity) return occ;
  const auto& img = geo.image[static_cast<int>(sym)];
  Bits out;
  occ.for_each([&](int i) { out.set(img[i]); });
  return out;
}

Position transform(const Position& pos, Symmetry sym) {
  return Position(pos.dims(), transform_bits(pos.geometry(), pos.occupied(), sym));
}

namespace {

std::pair<Bits, Symmetry> smallest_image(const Geometry& geo, const Bits& occ) {
  Bits best = occ;
  Symmetry best_sym = Symmetry::Identity;
  for (Symmetry s : {Symmetry::MirrorCols, Symmetry::MirrorRows, Symmetry::Rotate180}) {
    const Bits img = transform_bits(geo, occ, s);
    if (img.lex_less(best)) {
      best = img;
      best_sym = s;
    }
  }
  return {best, best_sym};
}

}  // namespace

Canonical canonical(const Position& pos) {
  auto [bits, sym] = smallest_image(pos.geometry(), pos.occupied());
  return Canonical{Position(pos.dims(), bits), sym};
}

Bits canonical_bits(const Geometry& geo, const Bits& occ) { return smallest_image(geo, occ).first; }

Position transpose(const Position& pos) {
  const BoardDims t = pos.dims().transposed();
  Bits out;
  pos.occupied().for_each([&](int i) {
    const int r = i / pos.cols();
    const int c = i % pos.cols();
    out.set(c * t.cols + r);
  });
  return Position(t, out);
}

std::vector<Run> empty_runs(const Position& pos, Player player) {
  const int rows = pos.rows();
  const int cols = pos.cols();
  const bool horizontal = player == Player::Horizontal;
  const int lines = horizontal ? rows : cols;
  const int len = horizontal ? cols : rows;
  auto empty_at = [&](int r, int c) {
    return r >= 0 && r < rows && c >= 0 && c < cols && !pos.is_occupied(r, c);
  };

  std::vector<Run> runs;
  for (int line = 0; line < lines; ++line) {
    Run cur;
    for (int k = 0; k <= len; ++k) {
      const int r = horizontal ? line : k;
      const int c = horizontal ? k : line;
      if (k < len && empty_at(r, c)) {
        const bool exposed = horizontal ? (empty_at(r - 1, c) || empty_at(r + 1, c))
                                        : (empty_at(r, c - 1) || empty_at(r, c + 1));
        if (cur.length == 0) cur.is_protected = true;
        ++cur.length;
        if (exposed) cur.is_protected = false;
      } else if (cur.length > 0) {
        runs.push_back(cur);
        cur = Run{};
      }
    }
  }
  return runs;
}

std::string to_diagram(const Position& pos) {
  std::string out;
  out.reserve(static_cast<size_t>(pos.area() + pos.rows()));
  for (int r = 0; r < pos.rows(); ++r) {
    for (int c = 0; c < pos.cols(); ++c) out.push_back(pos.is_occupied(r, c) ? '#' : '.');
    out.push_back('\n');
  }
  return out;
}

Position parse_diagram(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(first, last - first + 1));
  }
  if (lines.empty()) throw std::invalid_argument("empty diagram");
  const int rows = static_cast<int>(lines.size());
  const int cols = static_cast<int>(lines.front().size());
  const BoardDims dims{rows, cols};
  check_capacity(dims);
  Bits occ;
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(lines[r].size()) != cols) {
      throw std::invalid_argument("diagram row " + std::to_string(r + 1) + " has length " +
                                  std::to_string(lines[r].size()) + ", expected " +
                                  std::to_string(cols));
    }
    for (int c = 0; c < cols; ++c) {
      const char ch = lines[r][c];
      if (ch == '#') {
        occ.set(r * cols + c);
      } else if (ch != '.') {
        throw std::invalid_argument("diagram row " + std::to_string(r + 1) +
                                    ": unexpected character '" + std::string(1, ch) + "'");
      }
    }
  }
  return Position(dims, occ);
}

}  // namespace domineering
