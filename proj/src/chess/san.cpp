#include "evotune/chess/san.hpp"

#include <cctype>

namespace chess {

namespace {

constexpr std::string_view kPieceLetters = "PNBRQK";

char piece_letter(PieceKind k) { return kPieceLetters[static_cast<std::size_t>(k)]; }

bool is_capture_move(const Move& m) {
    return m.kind == MoveKind::Capture || m.kind == MoveKind::EnPassant;
}

}  // namespace

std::string to_san(const Position& p, const Move& m) {
    std::string san;
    if (m.kind == MoveKind::Castle) {
        san = file_of(m.to) == 6 ? "O-O" : "O-O-O";
    } else {
        PieceKind kind = p.at(m.from).kind();
        bool capture = is_capture_move(m) ||
                       (m.kind == MoveKind::Promotion && !p.at(m.to).empty());
        if (kind == PieceKind::Pawn) {
            if (capture) {
                san += static_cast<char>('a' + file_of(m.from));
                san += 'x';
            }
            san += square_name(m.to);
            if (m.promo >= 0) {
                san += '=';
                san += piece_letter(static_cast<PieceKind>(m.promo));
            }
        } else {
            san += piece_letter(kind);
            // Disambiguate among same-kind pieces that can reach the square.
            bool need_file = false, need_rank = false, others = false;
            for (const Move& o : generate_moves(p)) {
                if (o.from == m.from || o.to != m.to) continue;
                if (p.at(o.from).kind() != kind) continue;
                others = true;
                if (file_of(o.from) == file_of(m.from)) need_rank = true;
                if (rank_of(o.from) == rank_of(m.from)) need_file = true;
            }
            if (others && !need_file && !need_rank) need_file = true;
            if (need_file) san += static_cast<char>('a' + file_of(m.from));
            if (need_rank) san += static_cast<char>('1' + rank_of(m.from));
            if (capture) san += 'x';
            san += square_name(m.to);
        }
    }

    Position next = apply_move(p, m);
    if (in_check(next, next.side_to_move))
        san += generate_moves(next).empty() ? '#' : '+';
    return san;
}

Move parse_san(const Position& p, std::string_view token) {
    std::string text(token);
    auto fail = [&](const std::string& why) {
        throw ParseError("san: '" + std::string(token) + "': " + why);
    };

    // Strip annotations: check marks, !/? glyphs, trailing "e.p.".
    while (!text.empty() && (text.back() == '+' || text.back() == '#' || text.back() == '!' ||
                             text.back() == '?'))
        text.pop_back();
    if (text.size() >= 4 && text.compare(text.size() - 4, 4, "e.p.") == 0)
        text.resize(text.size() - 4);
    if (text.empty()) fail("empty token");

    auto moves = generate_moves(p);
    auto pick = [&](auto&& pred) {
        const Move* found = nullptr;
        for (const Move& m : moves) {
            if (!pred(m)) continue;
            if (found) fail("ambiguous");
            found = &m;
        }
        if (!found) fail("no matching legal move");
        return *found;
    };

    if (text == "O-O" || text == "0-0")
        return pick([&](const Move& m) { return m.kind == MoveKind::Castle && file_of(m.to) == 6; });
    if (text == "O-O-O" || text == "0-0-0")
        return pick([&](const Move& m) { return m.kind == MoveKind::Castle && file_of(m.to) == 2; });

    // Promotion suffix: "=Q" or bare "Q".
    std::int8_t promo = -1;
    if (text.size() >= 2) {
        char last = text.back();
        auto idx = kPieceLetters.find(last);
        if (idx != std::string_view::npos && idx >= 1 && idx <= 4) {
            std::size_t cut = text.size() - 1;
            if (cut >= 1 && text[cut - 1] == '=') --cut;
            // Only treat it as a promotion if a destination square precedes it.
            if (cut >= 2 && std::isdigit(static_cast<unsigned char>(text[cut - 1]))) {
                promo = static_cast<std::int8_t>(idx);
                text.resize(cut);
            }
        }
    }

    if (text.size() < 2) fail("truncated");
    std::string dest = text.substr(text.size() - 2);
    if (dest[0] < 'a' || dest[0] > 'h' || dest[1] < '1' || dest[1] > '8')
        fail("no destination square");
    Square to = parse_square(dest);
    text.resize(text.size() - 2);

    bool capture = false;
    if (!text.empty() && text.back() == 'x') {
        capture = true;
        text.pop_back();
    }

    PieceKind kind = PieceKind::Pawn;
    if (!text.empty()) {
        auto idx = kPieceLetters.find(text.front());
        if (idx != std::string_view::npos && idx >= 1) {
            kind = static_cast<PieceKind>(idx);
            text.erase(0, 1);
        }
    }

    int from_file = -1, from_rank = -1;
    for (char c : text) {
        if (c >= 'a' && c <= 'h' && from_file < 0)
            from_file = c - 'a';
        else if (c >= '1' && c <= '8' && from_rank < 0)
            from_rank = c - '1';
        else
            fail("bad disambiguation");
    }

    return pick([&](const Move& m) {
        if (m.kind == MoveKind::Castle) return false;
        if (p.at(m.from).kind() != kind) return false;
        if (m.to != to) return false;
        if (m.promo != promo) return false;
        bool cap = is_capture_move(m) || (m.kind == MoveKind::Promotion && !p.at(m.to).empty());
        if (cap != capture) return false;
        if (from_file >= 0 && file_of(m.from) != from_file) return false;
        if (from_rank >= 0 && rank_of(m.from) != from_rank) return false;
        return true;
    });
}

}  // namespace chess
