#include "evotune/evalfn.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace evotune {

using chess::Color;
using chess::PieceKind;
using chess::Position;
using chess::Square;

namespace {

struct ParamInfo {
    const char* name;
    int sign;  // +1 bonus, -1 penalty
};

// Order must match the Param enum. Penalties are the parameters whose
// feature descriptions are drawbacks for the side owning them.
constexpr ParamInfo kParams[kParamCount] = {
    {"PAWN_VALUE", +1},
    {"KNIGHT_VALUE", +1},
    {"BISHOP_VALUE", +1},
    {"ROOK_VALUE", +1},
    {"QUEEN_VALUE", +1},
    {"PAWN_ADVANCE_A", +1},
    {"PAWN_ADVANCE_B", +1},
    {"PASSED_PAWN_MULT", +1},
    {"DOUBLED_PAWN_PENALTY", -1},
    {"ISOLATED_PAWN_PENALTY", -1},
    {"BACKWARD_PAWN_PENALTY", -1},
    {"WEAK_SQUARE_PENALTY", -1},
    {"PASSED_PAWN_ENEMY_KING_DIST", +1},
    {"KNIGHT_SQ_MULT", +1},
    {"KNIGHT_OUTPOST_MULT", +1},
    {"BISHOP_MOBILITY", +1},
    {"BISHOP_PAIR", +1},
    {"ROOK_ATTACK_KING_FILE", +1},
    {"ROOK_ATTACK_KING_ADJ_FILE", +1},
    {"ROOK_ATTACK_KING_ADJ_FILE_ABGH", +1},
    {"ROOK_7TH_RANK", +1},
    {"ROOK_CONNECTED", +1},
    {"ROOK_MOBILITY", +1},
    {"ROOK_BEHIND_PASSED_PAWN", +1},
    {"ROOK_OPEN_FILE", +1},
    {"ROOK_SEMI_OPEN_FILE", +1},
    {"ROOK_ATCK_WEAK_PAWN_OPEN_COLUMN", +1},
    {"ROOK_COLUMN_MULT", +1},
    {"QUEEN_MOBILITY", +1},
    {"KING_NO_FRIENDLY_PAWN", -1},
    {"KING_NO_FRIENDLY_PAWN_ADJ", -1},
    {"KING_FRIENDLY_PAWN_ADVANCED1", -1},
    {"KING_NO_ENEMY_PAWN", -1},
    {"KING_NO_ENEMY_PAWN_ADJ", -1},
    {"KING_PRESSURE_MULT", +1},
};

constexpr int kKnightSteps[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                    {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr int kKingSteps[8][2] = {{1, 0}, {1, 1},  {0, 1},  {-1, 1},
                                  {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
constexpr int kSliderDirs[8][2] = {{1, 1},  {1, -1}, {-1, 1}, {-1, -1},
                                   {1, 0},  {-1, 0}, {0, 1},  {0, -1}};

// Every square the piece on s attacks, as a 64-bit set. Occupied squares
// are included regardless of colour (defending a friendly piece is still
// an attack on that square).
std::uint64_t attack_set(const Position& p, Square s) {
    chess::Piece pc = p.at(s);
    int f = chess::file_of(s), r = chess::rank_of(s);
    std::uint64_t set = 0;
    auto add = [&](int tf, int tr) {
        if (chess::on_board(tf, tr)) set |= 1ULL << chess::make_square(tf, tr);
    };
    switch (pc.kind()) {
        case PieceKind::Pawn: {
            int fwd = pc.color() == Color::White ? 1 : -1;
            add(f - 1, r + fwd);
            add(f + 1, r + fwd);
            break;
        }
        case PieceKind::Knight:
            for (auto [df, dr] : kKnightSteps) add(f + df, r + dr);
            break;
        case PieceKind::King:
            for (auto [df, dr] : kKingSteps) add(f + df, r + dr);
            break;
        default: {
            int d0 = pc.kind() == PieceKind::Rook ? 4 : 0;
            int d1 = pc.kind() == PieceKind::Bishop ? 4 : 8;
            for (int d = d0; d < d1; ++d) {
                int tf = f + kSliderDirs[d][0], tr = r + kSliderDirs[d][1];
                while (chess::on_board(tf, tr)) {
                    Square to = chess::make_square(tf, tr);
                    set |= 1ULL << to;
                    if (!p.at(to).empty()) break;
                    tf += kSliderDirs[d][0];
                    tr += kSliderDirs[d][1];
                }
            }
            break;
        }
    }
    return set;
}

bool is_passed_pawn(Square s, Color c, const std::vector<Square>& enemy_pawns) {
    for (Square q : enemy_pawns) {
        if (std::abs(chess::file_of(q) - chess::file_of(s)) > 1) continue;
        if (chess::relative_rank(q, c) > chess::relative_rank(s, c)) return false;
    }
    return true;
}

bool is_backward_pawn(const Position& p, Square s, Color c,
                      const std::vector<Square>& own_pawns) {
    int f = chess::file_of(s);
    for (Square q : own_pawns) {
        if (q == s || std::abs(chess::file_of(q) - f) != 1) continue;
        if (chess::relative_rank(q, c) <= chess::relative_rank(s, c)) return false;
    }
    // The stop square must be covered by an enemy pawn.
    int fwd = c == Color::White ? 1 : -1;
    int stop_r = chess::rank_of(s) + fwd;
    for (int df : {-1, 1}) {
        if (!chess::on_board(f + df, stop_r + fwd)) continue;
        if (p.at(chess::make_square(f + df, stop_r + fwd)).is(opposite(c), PieceKind::Pawn))
            return true;
    }
    return false;
}

int file_centrality(int f) { return std::min(std::min(f, 7 - f), 3); }

int centrality(Square s) {
    return file_centrality(chess::file_of(s)) + file_centrality(chess::rank_of(s));
}

std::uint64_t king_zone(Square king) {
    std::uint64_t zone = 1ULL << king;
    int f = chess::file_of(king), r = chess::rank_of(king);
    for (auto [df, dr] : kKingSteps)
        if (chess::on_board(f + df, r + dr)) zone |= 1ULL << chess::make_square(f + df, r + dr);
    return zone;
}

// Feature counts for one side; the caller subtracts Black's from White's.
void side_features(const Position& p, Color c, std::array<int, kParamCount>& n) {
    Color e = opposite(c);
    int fwd = c == Color::White ? 1 : -1;

    std::array<std::vector<Square>, 6> pieces;
    std::vector<Square> enemy_pawns;
    std::array<int, 8> own_pawns_on{}, enemy_pawns_on{};
    std::uint64_t own_occupied = 0;
    for (Square s = 0; s < 64; ++s) {
        chess::Piece pc = p.at(s);
        if (pc.empty()) continue;
        if (pc.color() == c) {
            pieces[static_cast<int>(pc.kind())].push_back(s);
            own_occupied |= 1ULL << s;
            if (pc.kind() == PieceKind::Pawn) ++own_pawns_on[chess::file_of(s)];
        } else if (pc.kind() == PieceKind::Pawn) {
            enemy_pawns.push_back(s);
            ++enemy_pawns_on[chess::file_of(s)];
        }
    }
    const auto& pawns = pieces[static_cast<int>(PieceKind::Pawn)];
    const auto& knights = pieces[static_cast<int>(PieceKind::Knight)];
    const auto& bishops = pieces[static_cast<int>(PieceKind::Bishop)];
    const auto& rooks = pieces[static_cast<int>(PieceKind::Rook)];
    const auto& queens = pieces[static_cast<int>(PieceKind::Queen)];
    Square own_king = p.king_square(c);
    Square enemy_king = p.king_square(e);

    n[PAWN_VALUE] += static_cast<int>(pawns.size());
    n[KNIGHT_VALUE] += static_cast<int>(knights.size());
    n[BISHOP_VALUE] += static_cast<int>(bishops.size());
    n[ROOK_VALUE] += static_cast<int>(rooks.size());
    n[QUEEN_VALUE] += static_cast<int>(queens.size());

    for (Square s : pawns) {
        int f = chess::file_of(s);
        int rel = chess::relative_rank(s, c);
        bool passed = is_passed_pawn(s, c, enemy_pawns);
        if (passed) {
            n[PAWN_ADVANCE_B] += rel - 2;
            n[PASSED_PAWN_MULT] += rel - 1;
            n[PASSED_PAWN_ENEMY_KING_DIST] += chess::chebyshev_distance(enemy_king, s);
        } else {
            n[PAWN_ADVANCE_A] += rel - 2;
        }
        bool isolated = (f == 0 || own_pawns_on[f - 1] == 0) &&
                        (f == 7 || own_pawns_on[f + 1] == 0);
        if (isolated) ++n[ISOLATED_PAWN_PENALTY];
        if (is_backward_pawn(p, s, c, pawns)) ++n[BACKWARD_PAWN_PENALTY];
    }
    for (int f = 0; f < 8; ++f)
        if (own_pawns_on[f] > 1) n[DOUBLED_PAWN_PENALTY] += own_pawns_on[f] - 1;

    // Squares in our own half-centre no pawn of ours can ever cover.
    for (int f = 2; f <= 5; ++f) {
        for (int rel = 2; rel <= 4; ++rel) {
            bool coverable = false;
            for (Square q : pawns) {
                if (std::abs(chess::file_of(q) - f) != 1) continue;
                if (chess::relative_rank(q, c) < rel) coverable = true;
            }
            if (!coverable) ++n[WEAK_SQUARE_PENALTY];
        }
    }

    for (Square s : knights) {
        n[KNIGHT_SQ_MULT] += centrality(s);
        int rel = chess::relative_rank(s, c);
        if (rel < 4 || rel > 6) continue;
        int f = chess::file_of(s), r = chess::rank_of(s);
        bool defended = false;
        for (int df : {-1, 1})
            if (chess::on_board(f + df, r - fwd) &&
                p.at(chess::make_square(f + df, r - fwd)).is(c, PieceKind::Pawn))
                defended = true;
        if (!defended) continue;
        bool chaseable = false;
        for (Square q : enemy_pawns)
            if (std::abs(chess::file_of(q) - f) == 1 && chess::relative_rank(q, c) > rel)
                chaseable = true;
        if (!chaseable) n[KNIGHT_OUTPOST_MULT] += rel - 1;
    }

    for (Square s : bishops)
        n[BISHOP_MOBILITY] += std::popcount(attack_set(p, s) & ~own_occupied);
    if (bishops.size() >= 2) ++n[BISHOP_PAIR];

    int ekf = chess::file_of(enemy_king);
    for (Square s : rooks) {
        int f = chess::file_of(s);
        if (f == ekf) ++n[ROOK_ATTACK_KING_FILE];
        if (std::abs(f - ekf) == 1) {
            ++n[ROOK_ATTACK_KING_ADJ_FILE];
            if (ekf <= 1 || ekf >= 6) ++n[ROOK_ATTACK_KING_ADJ_FILE_ABGH];
        }
        if (chess::relative_rank(s, c) == 7) ++n[ROOK_7TH_RANK];
        if (own_pawns_on[f] == 0)
            ++n[enemy_pawns_on[f] == 0 ? ROOK_OPEN_FILE : ROOK_SEMI_OPEN_FILE];
        n[ROOK_COLUMN_MULT] += file_centrality(f);
        n[ROOK_MOBILITY] += std::popcount(attack_set(p, s) & ~own_occupied);

        bool behind_passer = false, hits_weak_pawn = false;
        for (int r2 = 0; r2 < 8; ++r2) {
            Square q = chess::make_square(f, r2);
            if (q == s) continue;
            if (p.at(q).is(c, PieceKind::Pawn) && is_passed_pawn(q, c, enemy_pawns) &&
                chess::relative_rank(q, c) > chess::relative_rank(s, c))
                behind_passer = true;
            if (!p.at(q).is(e, PieceKind::Pawn)) continue;
            // Pressing an isolated or backward enemy pawn down the file,
            // with no other pawn standing in between.
            bool e_isolated = (f == 0 || enemy_pawns_on[f - 1] == 0) &&
                              (f == 7 || enemy_pawns_on[f + 1] == 0);
            if (!e_isolated && !is_backward_pawn(p, q, e, enemy_pawns)) continue;
            bool clear = true;
            int lo = std::min(chess::rank_of(s), r2);
            int hi = std::max(chess::rank_of(s), r2);
            for (int r2 = lo + 1; r2 < hi; ++r2) {
                chess::Piece between = p.at(chess::make_square(f, r2));
                if (!between.empty() && between.kind() == PieceKind::Pawn) clear = false;
            }
            if (clear) hits_weak_pawn = true;
        }
        if (behind_passer) ++n[ROOK_BEHIND_PASSED_PAWN];
        if (hits_weak_pawn) ++n[ROOK_ATCK_WEAK_PAWN_OPEN_COLUMN];
    }

    // Connected rooks: unordered pairs sharing a clear rank or file.
    for (std::size_t i = 0; i < rooks.size(); ++i) {
        for (std::size_t j = i + 1; j < rooks.size(); ++j) {
            Square a = rooks[i], b = rooks[j];
            int df = chess::file_of(b) - chess::file_of(a);
            int dr = chess::rank_of(b) - chess::rank_of(a);
            if (df != 0 && dr != 0) continue;
            int sf = (df > 0) - (df < 0), sr = (dr > 0) - (dr < 0);
            bool clear = true;
            int f2 = chess::file_of(a) + sf, r2 = chess::rank_of(a) + sr;
            while (f2 != chess::file_of(b) || r2 != chess::rank_of(b)) {
                if (!p.at(chess::make_square(f2, r2)).empty()) clear = false;
                f2 += sf;
                r2 += sr;
            }
            if (clear) ++n[ROOK_CONNECTED];
        }
    }

    for (Square s : queens)
        n[QUEEN_MOBILITY] += std::popcount(attack_set(p, s) & ~own_occupied);

    int kf = chess::file_of(own_king);
    if (own_pawns_on[kf] == 0) ++n[KING_NO_FRIENDLY_PAWN];
    if (enemy_pawns_on[kf] == 0) ++n[KING_NO_ENEMY_PAWN];
    for (int df : {-1, 1}) {
        if (kf + df < 0 || kf + df > 7) continue;
        if (own_pawns_on[kf + df] == 0) ++n[KING_NO_FRIENDLY_PAWN_ADJ];
        if (enemy_pawns_on[kf + df] == 0) ++n[KING_NO_ENEMY_PAWN_ADJ];
    }
    for (Square q : pawns) {
        if (std::abs(chess::file_of(q) - kf) > 1) continue;
        if (chess::relative_rank(q, c) == 3) ++n[KING_FRIENDLY_PAWN_ADVANCED1];
    }

    std::uint64_t zone = king_zone(enemy_king);
    for (int kind = 1; kind < 6; ++kind)
        for (Square s : pieces[kind])
            n[KING_PRESSURE_MULT] += std::popcount(attack_set(p, s) & zone);
}

}  // namespace

const char* param_name(int index) { return kParams[index].name; }
int param_sign(int index) { return kParams[index].sign; }
int param_max(int index) { return index < kMaterialParams ? 1023 : 63; }

int param_index(std::string_view name) {
    for (int i = 0; i < kParamCount; ++i)
        if (name == kParams[i].name) return i;
    return -1;
}

FeatureVector extract_features(const Position& p) {
    std::array<int, kParamCount> white{}, black{};
    side_features(p, Color::White, white);
    side_features(p, Color::Black, black);
    FeatureVector out;
    for (int i = 0; i < kParamCount; ++i) out[i] = white[i] - black[i];
    return out;
}

int evaluate(const Position& p, const EvalParams& params) {
    FeatureVector f = extract_features(p);
    int score = 0;
    for (int i = 0; i < kParamCount; ++i) score += kParams[i].sign * params[i] * f[i];
    return score;
}

std::string format_params(const EvalParams& params) {
    std::ostringstream out;
    for (int i = 0; i < kParamCount; ++i)
        out << kParams[i].name << '=' << params[i] << '\n';
    return out.str();
}

EvalParams parse_params(std::string_view text) {
    EvalParams params;
    std::array<bool, kParamCount> seen{};
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw chess::ParseError("params: expected NAME=value, got '" + line + "'");
        std::string name = line.substr(first, eq - first);
        while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
        int index = param_index(name);
        if (index < 0) throw chess::ParseError("params: unknown name '" + name + "'");
        if (seen[index]) throw chess::ParseError("params: duplicate '" + name + "'");
        seen[index] = true;
        std::size_t pos = 0;
        std::string value_text = line.substr(eq + 1);
        int value;
        try {
            value = std::stoi(value_text, &pos);
        } catch (const std::exception&) {
            throw chess::ParseError("params: bad value for '" + name + "'");
        }
        while (pos < value_text.size() &&
               (value_text[pos] == ' ' || value_text[pos] == '\t' || value_text[pos] == '\r'))
            ++pos;
        if (pos != value_text.size())
            throw chess::ParseError("params: bad value for '" + name + "'");
        if (value < 0 || value > param_max(index))
            throw chess::ParseError("params: '" + name + "' out of range: " +
                                    std::to_string(value));
        params[index] = value;
    }
    for (int i = 0; i < kParamCount; ++i)
        if (!seen[i])
            throw chess::ParseError(std::string("params: missing '") + kParams[i].name + "'");
    return params;
}

EvalParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw chess::ParseError("params: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_params(buffer.str());
}

void save_params_file(const EvalParams& params, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw chess::ParseError("params: cannot write '" + path + "'");
    out << format_params(params);
}

}  // namespace evotune
