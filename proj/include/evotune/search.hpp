#pragma once

#include "evotune/chess/movegen.hpp"
#include "evotune/evalfn.hpp"

namespace evotune {

// Mate scores live near this bound, shrinking by one per ply so nearer
// mates win comparisons. Regular evaluations stay far below it.
constexpr int kMateScore = 32000;

struct SearchResult {
    chess::Move best;
    int score;  // side-to-move perspective, centipawns
};

// Plain fixed-depth negamax with alpha-beta. Leaves score with evaluate(),
// sign-adjusted to the side to move. The root keeps the first strict
// improvement in canonical move order, so results are deterministic.
// Throws std::logic_error when the position has no legal moves.
SearchResult search_best_move(const chess::Position& p, const EvalParams& params, int depth);

// Score only, defined for every position (mate/stalemate included),
// converted to White's perspective.
int search_score_white(const chess::Position& p, const EvalParams& params, int depth);

}  // namespace evotune
