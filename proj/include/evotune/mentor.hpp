#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "evotune/chess/position.hpp"
#include "evotune/evalfn.hpp"
#include "evotune/subprocess.hpp"

namespace evotune {

struct MentorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scores are clamped here: mates and engine blowups become +-3000 so the
// training error stays bounded.
constexpr int kScoreClamp = 3000;

struct MentorScore {
    std::string position_id;  // canonical FEN, clocks stripped
    int score_cp;             // White's perspective, |score| <= 3000
};

enum class MentorBackend { Synthetic, ExternalEngine };

struct MentorConfig {
    MentorBackend backend = MentorBackend::Synthetic;
    int search_depth = 2;
    std::string engine_command;               // external only
    std::optional<EvalParams> hidden_params;  // synthetic only
    int noise_cp = 0;                         // synthetic only
    std::uint64_t noise_seed = 0;
    int timeout_ms = 10000;
    int processes = 1;  // external engine pool width
};

// Position identity for caching and dedup: FEN without the move clocks.
std::string position_key(const chess::Position& p);

// FEN -> (depth -> score) map with optional file persistence, one record
// per line: "<FEN>\t<depth>\t<score>". New scores append to the file.
class ScoreCache {
  public:
    ScoreCache() = default;
    explicit ScoreCache(const std::string& path);  // loads existing records

    std::optional<int> lookup(const std::string& key, int depth) const;
    void store(const std::string& key, int depth, int score_cp);
    std::size_t size() const { return entries_.size(); }

  private:
    std::map<std::pair<std::string, int>, int> entries_;
    std::string path_;
};

// One engine process speaking the UCI subset this project needs.
class UciEngine {
  public:
    explicit UciEngine(const std::string& command, int timeout_ms = 10000);

    // `uci`/`uciok` then `isready`/`readyok`; throws MentorError with the
    // conversation tail on timeout or crash.
    void handshake();

    // `position fen` + `go depth`; returns the last `score cp`/`score mate`
    // before `bestmove`, normalized to White's perspective and clamped.
    int score_white(const chess::Position& p, int depth);

  private:
    std::string expect(const std::string& token);

    Subprocess proc_;
    int timeout_ms_;
};

// Synthetic mentor: the hidden parameter set plus optional deterministic
// per-position noise. Depth <= 1 is the bare evaluation; deeper runs a
// fixed-depth search with the hidden parameters.
int synthetic_score(const chess::Position& p, const MentorConfig& cfg);

// Scores every position, order-preserving, consulting (and filling) the
// cache when one is given. External backend may shard across
// cfg.processes engine processes.
std::vector<MentorScore> score_positions(const std::vector<chess::Position>& positions,
                                         const MentorConfig& cfg,
                                         ScoreCache* cache = nullptr);

}  // namespace evotune
