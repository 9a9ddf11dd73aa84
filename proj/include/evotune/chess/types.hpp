#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chess {

enum class Color : std::int8_t { White = 0, Black = 1 };

constexpr Color opposite(Color c) { return c == Color::White ? Color::Black : Color::White; }

enum class PieceKind : std::int8_t { Pawn = 0, Knight, Bishop, Rook, Queen, King };

// Squares are 0..63 with a1 = 0, b1 = 1, ..., h8 = 63.
using Square = int;

constexpr Square make_square(int file, int rank) { return rank * 8 + file; }
constexpr int file_of(Square s) { return s & 7; }
constexpr int rank_of(Square s) { return s >> 3; }
constexpr bool on_board(int file, int rank) {
    return file >= 0 && file < 8 && rank >= 0 && rank < 8;
}
// Rank as seen from one side: 1..8, with rank 1 that side's back rank.
constexpr int relative_rank(Square s, Color c) {
    return c == Color::White ? rank_of(s) + 1 : 8 - rank_of(s);
}
constexpr Square flip_rank(Square s) { return make_square(file_of(s), 7 - rank_of(s)); }

inline int chebyshev_distance(Square a, Square b) {
    int df = file_of(a) - file_of(b);
    int dr = rank_of(a) - rank_of(b);
    if (df < 0) df = -df;
    if (dr < 0) dr = -dr;
    return df > dr ? df : dr;
}

std::string square_name(Square s);
Square parse_square(std::string_view text);  // throws on malformed input

// One board cell: empty or a (color, kind) pair packed into a byte.
class Piece {
  public:
    constexpr Piece() = default;
    constexpr Piece(Color c, PieceKind k)
        : code_(static_cast<std::int8_t>(1 + static_cast<int>(k) + (c == Color::Black ? 6 : 0))) {}

    constexpr bool empty() const { return code_ == 0; }
    constexpr Color color() const { return code_ > 6 ? Color::Black : Color::White; }
    constexpr PieceKind kind() const { return static_cast<PieceKind>((code_ - 1) % 6); }
    constexpr bool is(Color c, PieceKind k) const { return *this == Piece(c, k); }

    char to_char() const;                 // FEN letter, '.' when empty
    static Piece from_char(char c);       // throws on non-FEN letter

    constexpr bool operator==(const Piece&) const = default;

  private:
    std::int8_t code_ = 0;  // 0 empty, 1..6 white PNBRQK, 7..12 black
};

enum class MoveKind : std::uint8_t { Normal, Capture, Castle, EnPassant, Promotion };

struct Move {
    std::uint8_t from = 0;
    std::uint8_t to = 0;
    std::int8_t promo = -1;  // PieceKind value, set iff a pawn reaches the last rank
    MoveKind kind = MoveKind::Normal;

    constexpr bool operator==(const Move&) const = default;
    // Canonical generation order: from, then to, then promotion kind.
    constexpr bool operator<(const Move& o) const {
        if (from != o.from) return from < o.from;
        if (to != o.to) return to < o.to;
        return promo < o.promo;
    }
};

// Coordinate notation: "e2e4", "e7e8q".
std::string move_to_uci(const Move& m);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace chess
