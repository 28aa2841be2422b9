#include "domineering/outcome.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace domineering {

const char* to_string(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::N: return "N";
    case OutcomeClass::P: return "P";
    case OutcomeClass::V: return "V";
    case OutcomeClass::H: return "H";
  }
  return "?";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Unknown: return "unknown";
    case Provenance::Solved: return "solved";
    case Provenance::Rule: return "rule";
    case Provenance::Ingested: return "ingested";
  }
  return "?";
}

namespace {

constexpr ClassSet kN = class_bit(OutcomeClass::N);
constexpr ClassSet kP = class_bit(OutcomeClass::P);
constexpr ClassSet kV = class_bit(OutcomeClass::V);
constexpr ClassSet kH = class_bit(OutcomeClass::H);

// Classes in which `winner` wins when `starter` moves first.
constexpr ClassSet classes_where(Player starter, Player winner) {
  if (starter == Player::Vertical) return winner == Player::Vertical ? (kV | kN) : (kH | kP);
  return winner == Player::Horizontal ? (kH | kN) : (kV | kP);
}

ClassSet swap_vh(ClassSet s) {
  ClassSet out = s & (kN | kP);
  if (s & kV) out |= kH;
  if (s & kH) out |= kV;
  return out;
}

FieldKnowledge swapped(const FieldKnowledge& f) {
  FieldKnowledge out = f;
  if (f.winner) out.winner = opponent(*f.winner);
  return out;
}

}  // namespace

OutcomeClass class_of(Player winner_when_v_starts, Player winner_when_h_starts) {
  if (winner_when_v_starts == winner_when_h_starts) {
    return winner_when_v_starts == Player::Vertical ? OutcomeClass::V : OutcomeClass::H;
  }
  return winner_when_v_starts == Player::Vertical ? OutcomeClass::N : OutcomeClass::P;
}

OutcomeKnowledge OutcomeKnowledge::of_class(OutcomeClass c, Provenance p) {
  OutcomeKnowledge k;
  const bool v_first_wins = c == OutcomeClass::V || c == OutcomeClass::N;
  const bool h_first_wins = c == OutcomeClass::H || c == OutcomeClass::N;
  k.when_v_starts = {v_first_wins ? Player::Vertical : Player::Horizontal, p};
  k.when_h_starts = {h_first_wins ? Player::Horizontal : Player::Vertical, p};
  return k;
}

ClassSet OutcomeKnowledge::possible() const {
  ClassSet s = kAllClasses & ~excluded;
  if (when_v_starts.winner) s &= classes_where(Player::Vertical, *when_v_starts.winner);
  if (when_h_starts.winner) s &= classes_where(Player::Horizontal, *when_h_starts.winner);
  return s;
}

std::optional<OutcomeClass> OutcomeKnowledge::outcome_class() const {
  const ClassSet s = possible();
  for (OutcomeClass c : {OutcomeClass::N, OutcomeClass::P, OutcomeClass::V, OutcomeClass::H}) {
    if (s == class_bit(c)) return c;
  }
  return std::nullopt;
}

std::string OutcomeKnowledge::label() const {
  const ClassSet s = possible();
  if (s == 0) return "!";
  if (s == kAllClasses) return "?";
  std::string out;
  const int n = std::popcount(static_cast<unsigned>(s));
  if (n == 3) {
    for (OutcomeClass c : {OutcomeClass::N, OutcomeClass::P, OutcomeClass::V, OutcomeClass::H}) {
      if (!(s & class_bit(c))) return std::string("-") + to_string(c);
    }
  }
  // Table order: N and P first, then V and H.
  for (OutcomeClass c : {OutcomeClass::N, OutcomeClass::P, OutcomeClass::V, OutcomeClass::H}) {
    if (s & class_bit(c)) out += to_string(c);
  }
  return out;
}

std::string OutcomeKnowledge::provenance_label() const {
  std::string out;
  for (Provenance p : {Provenance::Ingested, Provenance::Solved, Provenance::Rule}) {
    const bool used = when_v_starts.provenance == p || when_h_starts.provenance == p ||
                      (excluded != 0 && exclusion_provenance == p);
    if (!used) continue;
    if (!out.empty()) out += '+';
    out += to_string(p);
  }
  return out.empty() ? "unknown" : out;
}

OutcomeKnowledge outcome_class(BoardDims dims, const SolveConfig& cfg) {
  const Position empty(dims);
  OutcomeKnowledge k;
  for (Player starter : {Player::Vertical, Player::Horizontal}) {
    const SolveReport r = solve(empty, starter, cfg);
    if (r.winner) k.field(starter) = {r.winner, Provenance::Solved};
  }
  return k;
}

OutcomeKnowledge transpose_dual(const OutcomeKnowledge& k) {
  OutcomeKnowledge out = k;
  out.when_v_starts = swapped(k.when_h_starts);
  out.when_h_starts = swapped(k.when_v_starts);
  out.excluded = swap_vh(k.excluded);
  return out;
}

LandscapeCell combine_horizontal(const LandscapeCell& a, const LandscapeCell& b) {
  if (a.dims.rows != b.dims.rows) {
    throw DimensionError("horizontal combination needs equal heights, got " + to_string(a.dims) +
                         " and " + to_string(b.dims));
  }
  auto hs = [](const OutcomeKnowledge& k) { return k.when_v_starts.winner == Player::Horizontal; };
  auto hf = [](const OutcomeKnowledge& k) { return k.when_h_starts.winner == Player::Horizontal; };

  LandscapeCell out{{a.dims.rows, a.dims.cols + b.dims.cols}, {}};
  if (hs(a.knowledge) && hs(b.knowledge)) {
    out.knowledge.when_v_starts = {Player::Horizontal, Provenance::Rule};
  }
  if ((hs(a.knowledge) && hf(b.knowledge)) || (hf(a.knowledge) && hs(b.knowledge))) {
    out.knowledge.when_h_starts = {Player::Horizontal, Provenance::Rule};
  }
  return out;
}

LandscapeCell combine_vertical(const LandscapeCell& a, const LandscapeCell& b) {
  if (a.dims.cols != b.dims.cols) {
    throw DimensionError("vertical combination needs equal widths, got " + to_string(a.dims) +
                         " and " + to_string(b.dims));
  }
  const LandscapeCell ta{a.dims.transposed(), transpose_dual(a.knowledge)};
  const LandscapeCell tb{b.dims.transposed(), transpose_dual(b.knowledge)};
  const LandscapeCell joined = combine_horizontal(ta, tb);
  return {joined.dims.transposed(), transpose_dual(joined.knowledge)};
}

bool merge_knowledge(OutcomeKnowledge& into, const OutcomeKnowledge& derived, Provenance tag,
                     bool* conflict) {
  bool changed = false;
  bool clash = false;
  for (Player starter : {Player::Vertical, Player::Horizontal}) {
    const FieldKnowledge& d = derived.field(starter);
    FieldKnowledge& f = into.field(starter);
    if (!d.known()) continue;
    if (!f.known()) {
      f = {d.winner, tag};
      changed = true;
    } else if (f.winner != d.winner) {
      clash = true;
    }
  }
  const ClassSet excl = into.excluded | derived.excluded;
  if (excl != into.excluded) {
    if (into.excluded == 0) into.exclusion_provenance = tag;
    into.excluded = excl;
    changed = true;
  }
  into.anomaly = into.anomaly || derived.anomaly;
  if (!into.consistent()) clash = true;
  if (conflict) *conflict = *conflict || clash;
  return changed;
}

namespace {

std::optional<OutcomeKnowledge> knowledge_for_label(std::string_view label) {
  auto cls = [](OutcomeClass c) { return OutcomeKnowledge::of_class(c, Provenance::Ingested); };
  OutcomeKnowledge k;
  if (label == "N") return cls(OutcomeClass::N);
  if (label == "P") return cls(OutcomeClass::P);
  if (label == "V") return cls(OutcomeClass::V);
  if (label == "H") return cls(OutcomeClass::H);
  if (label == "NH") {
    k.when_h_starts = {Player::Horizontal, Provenance::Ingested};
    return k;
  }
  if (label == "NV") {
    k.when_v_starts = {Player::Vertical, Provenance::Ingested};
    return k;
  }
  if (label == "NP" || label == "-V" || label == "-H") {
    k.excluded = label == "NP" ? (kV | kH) : label == "-V" ? kV : kH;
    k.exclusion_provenance = Provenance::Ingested;
    return k;
  }
  if (label == "1") {
    // Anomalous entry in the published table; read as a first-player win.
    OutcomeKnowledge n = cls(OutcomeClass::N);
    n.anomaly = true;
    return n;
  }
  return std::nullopt;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

int parse_dim(const std::string& field, int line, const char* name) {
  int v = 0;
  size_t used = 0;
  try {
    v = std::stoi(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != field.size() || field.empty() || v < 1) {
    throw ParseError(line, std::string("bad ") + name + " '" + field + "'");
  }
  return v;
}

}  // namespace

KnownResults parse_known_results(std::string_view text) {
  KnownResults out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string row = trim(raw);
    if (row.empty() || row.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(row);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (!row.empty() && row.back() == ',') fields.emplace_back();
    if (fields.size() != 3) {
      throw ParseError(line, "expected 3 fields m,n,label, got " + std::to_string(fields.size()));
    }
    if (fields[0] == "m" && fields[1] == "n") continue;
    const int m = parse_dim(fields[0], line, "m");
    const int n = parse_dim(fields[1], line, "n");
    auto k = knowledge_for_label(fields[2]);
    if (!k) throw ParseError(line, "unknown label '" + fields[2] + "'");
    if (!out.emplace(std::make_pair(m, n), *k).second) {
      throw ParseError(line, "duplicate entry for " + std::to_string(m) + "x" + std::to_string(n));
    }
  }
  return out;
}

KnownResults ingest_known_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read results file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_known_results(buf.str());
}

namespace {

struct SolveTask {
  size_t cell;
  Player starter;
  std::optional<Player> winner;
};

void run_solves(std::vector<SolveTask>& tasks, const std::vector<LandscapeCell>& cells,
                const LandscapeOptions& opts) {
  SolveConfig cfg = opts.solve;
  cfg.node_limit = opts.budget_nodes;
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < tasks.size(); i = next++) {
      const SolveReport r = solve(Position(cells[tasks[i].cell].dims), tasks[i].starter, cfg);
      tasks[i].winner = r.winner;
    }
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// Fields forced by the remaining class set, e.g. {N, V} fixes the V-start winner.
OutcomeKnowledge implied_fields(const OutcomeKnowledge& k) {
  OutcomeKnowledge out;
  const ClassSet s = k.possible();
  if (s == 0) return out;
  for (Player starter : {Player::Vertical, Player::Horizontal}) {
    for (Player winner : {Player::Vertical, Player::Horizontal}) {
      if ((s & ~classes_where(starter, winner)) == 0) out.field(starter) = {winner, Provenance::Rule};
    }
  }
  return out;
}

class Closure {
 public:
  explicit Closure(Landscape& land) : land_(land) {}

  bool merge(int m, int n, const OutcomeKnowledge& derived, const char* how) {
    LandscapeCell& cell = land_.at(m, n);
    bool conflict = false;
    const bool changed = merge_knowledge(cell.knowledge, derived, Provenance::Rule, &conflict);
    if (conflict && !cell.knowledge.anomaly) {
      land_.conflicts.push_back(to_string(cell.dims) + ": " + how + " disagrees with " +
                                cell.knowledge.label());
    }
    return changed;
  }

  bool round() {
    bool changed = false;
    for (int m = 1; m <= land_.max_m; ++m) {
      for (int n = 1; n <= land_.max_n; ++n) {
        const OutcomeKnowledge k = land_.at(m, n).knowledge;
        changed |= merge(m, n, implied_fields(k), "class constraint");
        if (n <= land_.max_m && m <= land_.max_n) {
          changed |= merge(n, m, transpose_dual(land_.at(m, n).knowledge), "transpose");
        }
      }
    }
    for (int m = 1; m <= land_.max_m; ++m) {
      for (int p = 1; p < land_.max_n; ++p) {
        for (int q = 1; p + q <= land_.max_n; ++q) {
          const LandscapeCell c = combine_horizontal(land_.at(m, p), land_.at(m, q));
          changed |= merge(m, p + q, c.knowledge, "horizontal combination");
        }
      }
    }
    for (int n = 1; n <= land_.max_n; ++n) {
      for (int p = 1; p < land_.max_m; ++p) {
        for (int q = 1; p + q <= land_.max_m; ++q) {
          const LandscapeCell c = combine_vertical(land_.at(p, n), land_.at(q, n));
          changed |= merge(p + q, n, c.knowledge, "vertical combination");
        }
      }
    }
    return changed;
  }

 private:
  Landscape& land_;
};

std::optional<OutcomeClass> class_at(const Landscape& land, int m, int n) {
  if (m < 1 || n < 1 || m > land.max_m || n > land.max_n) return std::nullopt;
  return land.at(m, n).knowledge.outcome_class();
}

std::string label_at(const Landscape& land, int m, int n) {
  if (m < 1 || n < 1 || m > land.max_m || n > land.max_n) return {};
  return land.at(m, n).knowledge.label();
}

void add_notes(Landscape& land) {
  // Rows (and by duality columns) whose entries beyond 31 follow from known
  // cells inside the grid.
  for (const bool dual : {false, true}) {
    auto cls = [&](int line, int k) { return dual ? class_at(land, k, line) : class_at(land, line, k); };
    auto lbl = [&](int line, int k) { return dual ? label_at(land, k, line) : label_at(land, line, k); };
    const OutcomeClass winner = dual ? OutcomeClass::V : OutcomeClass::H;
    const std::string w = to_string(winner);
    const std::string nw = std::string("N") + w;
    const char* dim = dual ? "m" : "n";
    auto board = [&](int line) {
      return dual ? std::string("[") + dim + " x " + std::to_string(line) + "]"
                  : "[" + std::to_string(line) + " x " + dim + "]";
    };
    const int base = dual ? 4 : 1;

    if (cls(6, 17) == winner) {
      land.notes.push_back(std::to_string(base) + ") " + board(6) + " for " + dim + " > 31: " + w +
                           ", except " + dim + " = 35: " + nw);
    }
    bool even_run = cls(8, 10) == winner;
    for (int k = 20; k <= 28 && even_run; k += 2) even_run = cls(8, k) == winner;
    if (even_run) {
      land.notes.push_back(std::to_string(base + 1) + ") " + board(8) + " for even " + dim +
                           " >= 20: " + w);
    }
    bool alternating = (dual ? land.max_m : land.max_n) >= 31;
    for (int k = 14; k <= 31 && alternating; ++k) {
      alternating = k % 2 == 0 ? cls(13, k) == winner : lbl(13, k) == nw;
    }
    if (alternating) {
      land.notes.push_back(std::to_string(base + 2) + ") " + board(13) + " for " + dim +
                           " > 31: " + w + " for even " + dim + ", " + nw + " for odd " + dim);
    }
  }
}

}  // namespace

Landscape generate_landscape(const LandscapeOptions& opts, const KnownResults& base) {
  if (opts.max_m < 1 || opts.max_n < 1 || opts.max_m > kMaxLandscape || opts.max_n > kMaxLandscape) {
    throw DimensionError("landscape size must be within 1.." + std::to_string(kMaxLandscape));
  }
  Landscape land;
  land.max_m = opts.max_m;
  land.max_n = opts.max_n;
  for (int m = 1; m <= opts.max_m; ++m) {
    for (int n = 1; n <= opts.max_n; ++n) land.cells.push_back({{m, n}, {}});
  }

  for (const auto& [mn, k] : base) {
    const auto [m, n] = mn;
    if (m <= land.max_m && n <= land.max_n) land.at(m, n).knowledge = k;
  }

  if (opts.budget_nodes > 0) {
    std::vector<SolveTask> tasks;
    for (size_t i = 0; i < land.cells.size(); ++i) {
      const LandscapeCell& c = land.cells[i];
      if (!c.dims.fits()) continue;
      for (Player starter : {Player::Vertical, Player::Horizontal}) {
        if (!c.knowledge.field(starter).known()) tasks.push_back({i, starter, std::nullopt});
      }
    }
    run_solves(tasks, land.cells, opts);
    for (const SolveTask& t : tasks) {
      if (t.winner) land.cells[t.cell].knowledge.field(t.starter) = {t.winner, Provenance::Solved};
    }
  }

  for (LandscapeCell& c : land.cells) {
    if (c.dims.rows == c.dims.cols && (c.knowledge.excluded & (kV | kH)) != (kV | kH)) {
      // Square boards are their own transpose: N or P.
      if (c.knowledge.excluded == 0) c.knowledge.exclusion_provenance = Provenance::Rule;
      c.knowledge.excluded |= kV | kH;
    }
    if (!c.knowledge.consistent()) {
      land.conflicts.push_back(to_string(c.dims) + ": contradictory knowledge");
    }
  }

  Closure closure(land);
  while (closure.round()) ++land.closure_rounds;
  add_notes(land);
  return land;
}

std::string landscape_csv(const Landscape& land) {
  std::string out = "m,n,label,provenance\n";
  for (const LandscapeCell& c : land.cells) {
    out += std::to_string(c.dims.rows) + "," + std::to_string(c.dims.cols) + "," +
           c.knowledge.label() + "," + c.knowledge.provenance_label() + "\n";
  }
  return out;
}

std::string landscape_grid(const Landscape& land) {
  constexpr int kWidth = 4;
  auto pad = [](std::string s, int w) {
    if (static_cast<int>(s.size()) < w) s.insert(0, static_cast<size_t>(w) - s.size(), ' ');
    return s;
  };
  std::string out = pad("m\\n", kWidth) + " |";
  for (int n = 1; n <= land.max_n; ++n) out += pad(std::to_string(n), kWidth);
  out += "\n" + std::string(static_cast<size_t>(kWidth + 2 + kWidth * land.max_n), '-') + "\n";
  for (int m = 1; m <= land.max_m; ++m) {
    out += pad(std::to_string(m), kWidth) + " |";
    for (int n = 1; n <= land.max_n; ++n) {
      const std::string l = land.at(m, n).knowledge.label();
      out += pad(l == "?" ? "" : l, kWidth);
    }
    out += "\n";
  }
  for (const std::string& note : land.notes) out += note + "\n";
  for (const std::string& c : land.conflicts) out += "conflict: " + c + "\n";
  return out;
}

}  // namespace domineering
