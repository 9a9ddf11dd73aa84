#include "evotune/chess/movegen.hpp"

#include <algorithm>

namespace chess {

namespace {

constexpr int kKnightSteps[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                    {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr int kKingSteps[8][2] = {{1, 0}, {1, 1},  {0, 1},  {-1, 1},
                                  {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
// Bishop directions first, rook directions last; queens use all eight.
constexpr int kSliderDirs[8][2] = {{1, 1},  {1, -1}, {-1, 1}, {-1, -1},
                                   {1, 0},  {-1, 0}, {0, 1},  {0, -1}};

void push_pawn_move(MoveList& out, Square from, Square to, MoveKind kind) {
    if (rank_of(to) == 0 || rank_of(to) == 7) {
        for (PieceKind k : {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook,
                            PieceKind::Queen}) {
            Move m;
            m.from = static_cast<std::uint8_t>(from);
            m.to = static_cast<std::uint8_t>(to);
            m.promo = static_cast<std::int8_t>(k);
            m.kind = MoveKind::Promotion;
            out.push(m);
        }
    } else {
        Move m;
        m.from = static_cast<std::uint8_t>(from);
        m.to = static_cast<std::uint8_t>(to);
        m.kind = kind;
        out.push(m);
    }
}

void pseudo_moves(const Position& p, MoveList& out) {
    Color us = p.side_to_move;
    Color them = opposite(us);
    int forward = us == Color::White ? 1 : -1;

    auto push = [&](Square from, Square to, MoveKind kind) {
        Move m;
        m.from = static_cast<std::uint8_t>(from);
        m.to = static_cast<std::uint8_t>(to);
        m.kind = kind;
        out.push(m);
    };

    for (Square from = 0; from < 64; ++from) {
        Piece pc = p.at(from);
        if (pc.empty() || pc.color() != us) continue;
        int f = file_of(from), r = rank_of(from);

        switch (pc.kind()) {
            case PieceKind::Pawn: {
                Square one = make_square(f, r + forward);
                if (p.at(one).empty()) {
                    push_pawn_move(out, from, one, MoveKind::Normal);
                    int home = us == Color::White ? 1 : 6;
                    if (r == home) {
                        Square two = make_square(f, r + 2 * forward);
                        if (p.at(two).empty()) push(from, two, MoveKind::Normal);
                    }
                }
                for (int df : {-1, 1}) {
                    if (!on_board(f + df, r + forward)) continue;
                    Square to = make_square(f + df, r + forward);
                    Piece target = p.at(to);
                    if (!target.empty() && target.color() == them)
                        push_pawn_move(out, from, to, MoveKind::Capture);
                    else if (to == p.en_passant)
                        push(from, to, MoveKind::EnPassant);
                }
                break;
            }
            case PieceKind::Knight:
                for (auto [df, dr] : kKnightSteps) {
                    if (!on_board(f + df, r + dr)) continue;
                    Square to = make_square(f + df, r + dr);
                    Piece target = p.at(to);
                    if (target.empty())
                        push(from, to, MoveKind::Normal);
                    else if (target.color() == them)
                        push(from, to, MoveKind::Capture);
                }
                break;
            case PieceKind::King:
                for (auto [df, dr] : kKingSteps) {
                    if (!on_board(f + df, r + dr)) continue;
                    Square to = make_square(f + df, r + dr);
                    Piece target = p.at(to);
                    if (target.empty())
                        push(from, to, MoveKind::Normal);
                    else if (target.color() == them)
                        push(from, to, MoveKind::Capture);
                }
                break;
            default: {
                int d0 = pc.kind() == PieceKind::Rook ? 4 : 0;
                int d1 = pc.kind() == PieceKind::Bishop ? 4 : 8;
                for (int d = d0; d < d1; ++d) {
                    const int* dir = kSliderDirs[d];
                    int tf = f + dir[0], tr = r + dir[1];
                    while (on_board(tf, tr)) {
                        Square to = make_square(tf, tr);
                        Piece target = p.at(to);
                        if (target.empty()) {
                            push(from, to, MoveKind::Normal);
                        } else {
                            if (target.color() == them) push(from, to, MoveKind::Capture);
                            break;
                        }
                        tf += dir[0];
                        tr += dir[1];
                    }
                }
                break;
            }
        }
    }

    // Castling: rights imply king/rook on home squares (position invariant).
    int rank = us == Color::White ? 0 : 7;
    Square king = make_square(4, rank);
    auto can_castle = [&](std::uint8_t right, int rook_file) {
        if (!(p.castling & right)) return false;
        int step = rook_file == 7 ? 1 : -1;
        for (int f2 = 4 + step; f2 != rook_file; f2 += step)
            if (!p.at(make_square(f2, rank)).empty()) return false;
        // King may not castle out of, through, or into check.
        for (int f2 = 4; f2 != 4 + 3 * step; f2 += step)
            if (is_square_attacked(p, make_square(f2, rank), them)) return false;
        return true;
    };
    if (can_castle(us == Color::White ? WhiteKingside : BlackKingside, 7))
        push(king, make_square(6, rank), MoveKind::Castle);
    if (can_castle(us == Color::White ? WhiteQueenside : BlackQueenside, 0))
        push(king, make_square(2, rank), MoveKind::Castle);
}

}  // namespace

void generate_moves(const Position& p, MoveList& out) {
    MoveList pseudo;
    pseudo_moves(p, pseudo);
    out.count = 0;
    Color us = p.side_to_move;
    for (const Move& m : pseudo)
        if (!in_check(apply_move(p, m), us)) out.push(m);
    std::sort(out.moves.begin(), out.moves.begin() + out.count);
}

std::vector<Move> generate_moves(const Position& p) {
    MoveList list;
    generate_moves(p, list);
    return std::vector<Move>(list.begin(), list.end());
}

std::uint64_t perft(const Position& p, int depth) {
    if (depth == 0) return 1;
    MoveList list;
    generate_moves(p, list);
    if (depth == 1) return static_cast<std::uint64_t>(list.count);
    std::uint64_t nodes = 0;
    for (const Move& m : list) nodes += perft(apply_move(p, m), depth - 1);
    return nodes;
}

Move parse_uci_move(const Position& p, std::string_view text) {
    if (text.size() < 4 || text.size() > 5)
        throw ParseError("move: bad coordinate notation '" + std::string(text) + "'");
    Square from = parse_square(text.substr(0, 2));
    Square to = parse_square(text.substr(2, 2));
    std::int8_t promo = -1;
    if (text.size() == 5) {
        switch (text[4]) {
            case 'n': promo = static_cast<std::int8_t>(PieceKind::Knight); break;
            case 'b': promo = static_cast<std::int8_t>(PieceKind::Bishop); break;
            case 'r': promo = static_cast<std::int8_t>(PieceKind::Rook); break;
            case 'q': promo = static_cast<std::int8_t>(PieceKind::Queen); break;
            default: throw ParseError("move: bad promotion piece in '" + std::string(text) + "'");
        }
    }
    for (const Move& m : generate_moves(p))
        if (m.from == from && m.to == to && m.promo == promo) return m;
    throw ParseError("move: '" + std::string(text) + "' is not legal here");
}

}  // namespace chess
