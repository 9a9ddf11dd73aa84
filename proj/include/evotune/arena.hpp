#pragma once

#include <string>
#include <vector>

#include "evotune/chess/epd.hpp"
#include "evotune/chess/position.hpp"
#include "evotune/evalfn.hpp"

namespace evotune {

// A move sequence replayed from the start position.
using Opening = std::vector<chess::Move>;

// One line per opening: space-separated coordinate moves. Blank lines and
// '#' comments are skipped; every line is replayed for legality on load.
std::vector<Opening> load_openings(const std::string& path);

struct GameRecord {
    std::vector<chess::Move> moves;  // full line from the start position
    std::string result;              // "1-0", "0-1" or "1/2-1/2"
    std::string termination;         // checkmate, stalemate, fifty-move rule,
                                     // threefold repetition, move cap
    int opening = 0;                 // index into the opening list
    bool a_played_white = true;
};

struct MatchResult {
    int games = 0;
    double score_a = 0.0;  // win 1, draw 0.5, loss 0
    double win_pct = 0.0;  // 100 * score_a / games
    std::vector<GameRecord> records;
};

// Fixed-depth match between two parameter sets. Games come in pairs: both
// start from the same opening (cycling through the list) and the colors
// swap inside each pair. Deterministic: same inputs, same games.
MatchResult play_match(const EvalParams& params_a, const EvalParams& params_b, int games,
                       int depth, const std::vector<Opening>& openings, int threads = 1);

// W = 1 / (10^(-rd/400) + 1)
double elo_expected_score(double rating_diff);
// RD = -400 log10(1/w - 1); w must lie strictly between 0 and 1.
double elo_diff(double expected_score);

struct SuiteRecordResult {
    std::string id;
    bool solved = false;
    chess::Move chosen;
};

struct SuiteResult {
    int solved = 0;
    std::vector<SuiteRecordResult> records;
};

// A record is solved when the fixed-depth search picks one of its "bm"
// moves. Every record must carry a bm opcode.
SuiteResult run_epd_suite(const std::vector<chess::EpdRecord>& suite,
                          const EvalParams& params, int depth);

// Summary CSVs and a PGN dump of all match games.
std::string match_csv(const MatchResult& m);
std::string suite_csv(const SuiteResult& s);
std::string match_pgn(const MatchResult& m, const std::string& name_a,
                      const std::string& name_b);

}  // namespace evotune
