#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "domineering/board.hpp"
#include "domineering/search.hpp"

namespace domineering::cli {

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kUsage = 2, kBudgetExhausted = 3 };

inline constexpr const char* kCacheEnv = "DOMINEERING_CACHE";

struct ConfigFingerprint {
  int tt_bits = 22;
  std::string tt_scheme = "deep";
  bool knowledge = true;
  bool tt = true;
  std::string order = "heuristic";
  uint64_t seed = kDefaultSeed;

  bool operator==(const ConfigFingerprint&) const = default;
};

ConfigFingerprint fingerprint_of(const SolveConfig& cfg);

struct ResultRecord {
  int rows = 0;
  int cols = 0;
  Player to_move = Player::Vertical;
  Player winner = Player::Vertical;
  uint64_t nodes = 0;
  double elapsed_ms = 0;
  ConfigFingerprint config;
  std::string timestamp;

  bool operator==(const ResultRecord&) const = default;
};

std::string to_json_line(const ResultRecord& r);
// Throws std::invalid_argument on malformed input.
ResultRecord parse_json_line(const std::string& line);

// Append-only JSONL file of solve results.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }
  void append(const ResultRecord& r) const;
  // Unparseable lines are skipped.
  std::vector<ResultRecord> load() const;
  std::optional<ResultRecord> find(BoardDims dims, Player to_move,
                                   const ConfigFingerprint& config) const;

 private:
  std::filesystem::path path_;
};

// --cache, then $DOMINEERING_CACHE, then ~/.cache/domineering/results.jsonl.
std::filesystem::path default_cache_path();

std::string utc_timestamp();

// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace domineering::cli
