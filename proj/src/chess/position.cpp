#include "evotune/chess/position.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace chess {

std::string square_name(Square s) {
    std::string out(2, '?');
    out[0] = static_cast<char>('a' + file_of(s));
    out[1] = static_cast<char>('1' + rank_of(s));
    return out;
}

Square parse_square(std::string_view text) {
    if (text.size() != 2 || text[0] < 'a' || text[0] > 'h' || text[1] < '1' || text[1] > '8')
        throw ParseError("square: bad name '" + std::string(text) + "'");
    return make_square(text[0] - 'a', text[1] - '1');
}

namespace {
constexpr std::string_view kPieceChars = "PNBRQK";
}

char Piece::to_char() const {
    if (empty()) return '.';
    char c = kPieceChars[static_cast<std::size_t>(kind())];
    return color() == Color::White ? c : static_cast<char>(std::tolower(c));
}

Piece Piece::from_char(char c) {
    Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black;
    auto idx = kPieceChars.find(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (idx == std::string_view::npos)
        throw ParseError(std::string("piece: bad letter '") + c + "'");
    return Piece(color, static_cast<PieceKind>(idx));
}

std::string move_to_uci(const Move& m) {
    std::string out = square_name(m.from) + square_name(m.to);
    if (m.promo >= 0)
        out += static_cast<char>(
            std::tolower(kPieceChars[static_cast<std::size_t>(m.promo)]));
    return out;
}

Square Position::king_square(Color c) const {
    for (Square s = 0; s < 64; ++s)
        if (board[static_cast<std::size_t>(s)].is(c, PieceKind::King)) return s;
    return -1;
}

Position start_position() {
    return parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1");
}

namespace {

std::vector<std::string> split_fields(std::string_view text) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : text) {
        if (c == ' ' || c == '\t') {
            if (!cur.empty()) fields.push_back(std::move(cur)), cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) fields.push_back(std::move(cur));
    return fields;
}

void check_invariants(const Position& p) {
    int kings[2] = {0, 0};
    int pawns[2] = {0, 0};
    for (Square s = 0; s < 64; ++s) {
        Piece pc = p.at(s);
        if (pc.empty()) continue;
        int side = pc.color() == Color::White ? 0 : 1;
        if (pc.kind() == PieceKind::King) ++kings[side];
        if (pc.kind() == PieceKind::Pawn) {
            ++pawns[side];
            if (rank_of(s) == 0 || rank_of(s) == 7)
                throw ParseError("placement: pawn on back rank at " + square_name(s));
        }
    }
    if (kings[0] != 1 || kings[1] != 1)
        throw ParseError("placement: need exactly one king per side, got " +
                         std::to_string(kings[0]) + " white / " + std::to_string(kings[1]) +
                         " black");
    if (pawns[0] > 8 || pawns[1] > 8) throw ParseError("placement: more than 8 pawns for a side");

    if (p.en_passant >= 0) {
        int r = rank_of(p.en_passant);
        if (!((p.side_to_move == Color::White && r == 5) ||
              (p.side_to_move == Color::Black && r == 2)))
            throw ParseError("en-passant: square " + square_name(p.en_passant) +
                             " not on the capture rank for the side to move");
        Square pawn_sq = p.side_to_move == Color::White ? p.en_passant - 8 : p.en_passant + 8;
        if (!p.at(pawn_sq).is(opposite(p.side_to_move), PieceKind::Pawn))
            throw ParseError("en-passant: no pawn to capture behind " +
                             square_name(p.en_passant));
    }

    auto require = [&](bool cond, const char* flag) {
        if (!cond) throw ParseError(std::string("castling: flag ") + flag +
                                    " inconsistent with king/rook placement");
    };
    if (p.castling & WhiteKingside)
        require(p.at(make_square(4, 0)).is(Color::White, PieceKind::King) &&
                    p.at(make_square(7, 0)).is(Color::White, PieceKind::Rook),
                "K");
    if (p.castling & WhiteQueenside)
        require(p.at(make_square(4, 0)).is(Color::White, PieceKind::King) &&
                    p.at(make_square(0, 0)).is(Color::White, PieceKind::Rook),
                "Q");
    if (p.castling & BlackKingside)
        require(p.at(make_square(4, 7)).is(Color::Black, PieceKind::King) &&
                    p.at(make_square(7, 7)).is(Color::Black, PieceKind::Rook),
                "k");
    if (p.castling & BlackQueenside)
        require(p.at(make_square(4, 7)).is(Color::Black, PieceKind::King) &&
                    p.at(make_square(0, 7)).is(Color::Black, PieceKind::Rook),
                "q");
}

}  // namespace

Position parse_fen(std::string_view fen) {
    auto fields = split_fields(fen);
    if (fields.size() < 4 || fields.size() > 6)
        throw ParseError("fen: expected 4-6 fields, got " + std::to_string(fields.size()));

    Position p;

    // Field 1: piece placement, ranks 8 down to 1.
    {
        int rank = 7, file = 0;
        for (char c : fields[0]) {
            if (c == '/') {
                if (file != 8)
                    throw ParseError("placement: rank " + std::to_string(rank + 1) +
                                     " has " + std::to_string(file) + " files");
                --rank;
                file = 0;
                if (rank < 0) throw ParseError("placement: too many ranks");
            } else if (c >= '1' && c <= '8') {
                file += c - '0';
                if (file > 8) throw ParseError("placement: rank overflows 8 files");
            } else {
                if (file > 7) throw ParseError("placement: rank overflows 8 files");
                p.at(make_square(file, rank)) = Piece::from_char(c);
                ++file;
            }
        }
        if (rank != 0 || file != 8) throw ParseError("placement: expected 8 ranks of 8 files");
    }

    if (fields[1] == "w")
        p.side_to_move = Color::White;
    else if (fields[1] == "b")
        p.side_to_move = Color::Black;
    else
        throw ParseError("side-to-move: expected 'w' or 'b', got '" + fields[1] + "'");

    if (fields[2] != "-") {
        for (char c : fields[2]) {
            switch (c) {
                case 'K': p.castling |= WhiteKingside; break;
                case 'Q': p.castling |= WhiteQueenside; break;
                case 'k': p.castling |= BlackKingside; break;
                case 'q': p.castling |= BlackQueenside; break;
                default: throw ParseError(std::string("castling: bad flag '") + c + "'");
            }
        }
    }

    if (fields[3] != "-") p.en_passant = static_cast<std::int8_t>(parse_square(fields[3]));

    auto parse_count = [](const std::string& text, const char* name) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(text, &pos);
            if (pos != text.size() || v < 0) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string(name) + ": bad count '" + text + "'");
        }
    };
    if (fields.size() >= 5) p.halfmove_clock = parse_count(fields[4], "halfmove-clock");
    if (fields.size() >= 6) {
        p.fullmove_number = parse_count(fields[5], "fullmove-number");
        if (p.fullmove_number < 1) throw ParseError("fullmove-number: must be >= 1");
    }

    check_invariants(p);
    return p;
}

std::string format_fen(const Position& p) {
    std::ostringstream out;
    for (int rank = 7; rank >= 0; --rank) {
        int run = 0;
        for (int file = 0; file < 8; ++file) {
            Piece pc = p.at(make_square(file, rank));
            if (pc.empty()) {
                ++run;
            } else {
                if (run) out << run, run = 0;
                out << pc.to_char();
            }
        }
        if (run) out << run;
        if (rank) out << '/';
    }
    out << ' ' << (p.side_to_move == Color::White ? 'w' : 'b') << ' ';
    if (p.castling == 0) {
        out << '-';
    } else {
        if (p.castling & WhiteKingside) out << 'K';
        if (p.castling & WhiteQueenside) out << 'Q';
        if (p.castling & BlackKingside) out << 'k';
        if (p.castling & BlackQueenside) out << 'q';
    }
    out << ' ' << (p.en_passant >= 0 ? square_name(p.en_passant) : "-");
    out << ' ' << p.halfmove_clock << ' ' << p.fullmove_number;
    return out.str();
}

namespace {

constexpr int kKnightSteps[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                    {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr int kKingSteps[8][2] = {{1, 0}, {1, 1},  {0, 1},  {-1, 1},
                                  {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
constexpr int kBishopDirs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
constexpr int kRookDirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

}  // namespace

bool is_square_attacked(const Position& p, Square s, Color by) {
    int f = file_of(s), r = rank_of(s);

    // Pawns: a white pawn attacks from one rank below the target.
    int pawn_rank = by == Color::White ? r - 1 : r + 1;
    for (int df : {-1, 1})
        if (on_board(f + df, pawn_rank) &&
            p.at(make_square(f + df, pawn_rank)).is(by, PieceKind::Pawn))
            return true;

    for (auto [df, dr] : kKnightSteps)
        if (on_board(f + df, r + dr) &&
            p.at(make_square(f + df, r + dr)).is(by, PieceKind::Knight))
            return true;

    for (auto [df, dr] : kKingSteps)
        if (on_board(f + df, r + dr) &&
            p.at(make_square(f + df, r + dr)).is(by, PieceKind::King))
            return true;

    auto scan = [&](const int dirs[4][2], PieceKind slider) {
        for (int d = 0; d < 4; ++d) {
            int tf = f + dirs[d][0], tr = r + dirs[d][1];
            while (on_board(tf, tr)) {
                Piece pc = p.at(make_square(tf, tr));
                if (!pc.empty()) {
                    if (pc.color() == by &&
                        (pc.kind() == slider || pc.kind() == PieceKind::Queen))
                        return true;
                    break;
                }
                tf += dirs[d][0];
                tr += dirs[d][1];
            }
        }
        return false;
    };
    return scan(kBishopDirs, PieceKind::Bishop) || scan(kRookDirs, PieceKind::Rook);
}

bool in_check(const Position& p, Color c) {
    return is_square_attacked(p, p.king_square(c), opposite(c));
}

Position apply_move(const Position& p, const Move& m) {
    Position q = p;
    Color us = p.side_to_move;
    Piece moving = p.at(m.from);
    bool is_pawn = moving.kind() == PieceKind::Pawn;
    bool is_capture = m.kind == MoveKind::Capture || m.kind == MoveKind::EnPassant ||
                      (m.kind == MoveKind::Promotion && !p.at(m.to).empty());

    q.at(m.from) = Piece{};
    q.at(m.to) = moving;

    switch (m.kind) {
        case MoveKind::EnPassant:
            q.at(us == Color::White ? m.to - 8 : m.to + 8) = Piece{};
            break;
        case MoveKind::Castle: {
            int rank = rank_of(m.from);
            bool kingside = file_of(m.to) == 6;
            Square rook_from = make_square(kingside ? 7 : 0, rank);
            Square rook_to = make_square(kingside ? 5 : 3, rank);
            q.at(rook_to) = q.at(rook_from);
            q.at(rook_from) = Piece{};
            break;
        }
        case MoveKind::Promotion:
            q.at(m.to) = Piece(us, static_cast<PieceKind>(m.promo));
            break;
        default:
            break;
    }

    // Any move touching a king or rook home square drops the matching right.
    auto clear_rights = [&](Square s) {
        switch (s) {
            case 4: q.castling &= static_cast<std::uint8_t>(~(WhiteKingside | WhiteQueenside)); break;
            case 0: q.castling &= static_cast<std::uint8_t>(~WhiteQueenside); break;
            case 7: q.castling &= static_cast<std::uint8_t>(~WhiteKingside); break;
            case 60: q.castling &= static_cast<std::uint8_t>(~(BlackKingside | BlackQueenside)); break;
            case 56: q.castling &= static_cast<std::uint8_t>(~BlackQueenside); break;
            case 63: q.castling &= static_cast<std::uint8_t>(~BlackKingside); break;
            default: break;
        }
    };
    clear_rights(m.from);
    clear_rights(m.to);

    q.en_passant = -1;
    if (is_pawn && (m.to - m.from == 16 || m.from - m.to == 16))
        q.en_passant = static_cast<std::int8_t>((m.from + m.to) / 2);

    q.halfmove_clock = (is_pawn || is_capture) ? 0 : p.halfmove_clock + 1;
    if (us == Color::Black) ++q.fullmove_number;
    q.side_to_move = opposite(us);
    return q;
}

Position mirror(const Position& p) {
    Position q;
    for (Square s = 0; s < 64; ++s) {
        Piece pc = p.at(s);
        if (!pc.empty()) q.at(flip_rank(s)) = Piece(opposite(pc.color()), pc.kind());
    }
    q.side_to_move = opposite(p.side_to_move);
    if (p.castling & WhiteKingside) q.castling |= BlackKingside;
    if (p.castling & WhiteQueenside) q.castling |= BlackQueenside;
    if (p.castling & BlackKingside) q.castling |= WhiteKingside;
    if (p.castling & BlackQueenside) q.castling |= WhiteQueenside;
    q.en_passant = p.en_passant >= 0 ? static_cast<std::int8_t>(flip_rank(p.en_passant)) : -1;
    q.halfmove_clock = p.halfmove_clock;
    q.fullmove_number = p.fullmove_number;
    return q;
}

}  // namespace chess
