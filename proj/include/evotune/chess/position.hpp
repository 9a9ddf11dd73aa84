#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "evotune/chess/types.hpp"

namespace chess {

enum CastlingRight : std::uint8_t {
    WhiteKingside = 1,
    WhiteQueenside = 2,
    BlackKingside = 4,
    BlackQueenside = 8,
};

// Full game state. Immutable by convention: apply_move returns a new value,
// so positions can be shared freely between workers.
struct Position {
    std::array<Piece, 64> board{};
    Color side_to_move = Color::White;
    std::uint8_t castling = 0;
    std::int8_t en_passant = -1;  // capture target square, -1 when none
    int halfmove_clock = 0;
    int fullmove_number = 1;

    const Piece& at(Square s) const { return board[static_cast<std::size_t>(s)]; }
    Piece& at(Square s) { return board[static_cast<std::size_t>(s)]; }
    Square king_square(Color c) const;

    bool operator==(const Position&) const = default;
};

Position start_position();

// Accepts 4, 5 or 6 fields; validates the position invariants (one king per
// side, no pawn on a back rank, en-passant rank, castling rights consistent
// with king/rook home squares). Throws ParseError naming the offending field.
Position parse_fen(std::string_view fen);
std::string format_fen(const Position& p);

bool is_square_attacked(const Position& p, Square s, Color by);
bool in_check(const Position& p, Color c);

// Legal move application; the move must come from generate_moves.
Position apply_move(const Position& p, const Move& m);

// Vertical flip with colors, castling rights and en passant swapped.
Position mirror(const Position& p);

}  // namespace chess
