#pragma once

#include <cstdint>
#include <vector>

#include "evotune/chess/position.hpp"

namespace chess {

// Fixed-capacity move buffer for the search hot path.
struct MoveList {
    std::array<Move, 256> moves;
    int count = 0;

    void push(const Move& m) { moves[static_cast<std::size_t>(count++)] = m; }
    Move* begin() { return moves.data(); }
    Move* end() { return moves.data() + count; }
    const Move* begin() const { return moves.data(); }
    const Move* end() const { return moves.data() + count; }
    bool empty() const { return count == 0; }
};

// Exactly the legal moves, sorted by (from, to, promotion kind).
// An empty result means mate or stalemate.
void generate_moves(const Position& p, MoveList& out);
std::vector<Move> generate_moves(const Position& p);

std::uint64_t perft(const Position& p, int depth);

// Resolves coordinate notation ("e2e4", "e7e8q") against the legal moves.
// Throws ParseError when the text is malformed or no legal move matches.
Move parse_uci_move(const Position& p, std::string_view text);

}  // namespace chess
