#pragma once

#include <array>
#include <string>
#include <string_view>

#include "evotune/chess/position.hpp"

namespace evotune {

// The 35 tunable weights, in chromosome order: five material values first,
// then the positional block. Material weights live in 0..1023, positional
// ones in 0..63.
enum Param : int {
    PAWN_VALUE = 0,
    KNIGHT_VALUE,
    BISHOP_VALUE,
    ROOK_VALUE,
    QUEEN_VALUE,
    PAWN_ADVANCE_A,
    PAWN_ADVANCE_B,
    PASSED_PAWN_MULT,
    DOUBLED_PAWN_PENALTY,
    ISOLATED_PAWN_PENALTY,
    BACKWARD_PAWN_PENALTY,
    WEAK_SQUARE_PENALTY,
    PASSED_PAWN_ENEMY_KING_DIST,
    KNIGHT_SQ_MULT,
    KNIGHT_OUTPOST_MULT,
    BISHOP_MOBILITY,
    BISHOP_PAIR,
    ROOK_ATTACK_KING_FILE,
    ROOK_ATTACK_KING_ADJ_FILE,
    ROOK_ATTACK_KING_ADJ_FILE_ABGH,
    ROOK_7TH_RANK,
    ROOK_CONNECTED,
    ROOK_MOBILITY,
    ROOK_BEHIND_PASSED_PAWN,
    ROOK_OPEN_FILE,
    ROOK_SEMI_OPEN_FILE,
    ROOK_ATCK_WEAK_PAWN_OPEN_COLUMN,
    ROOK_COLUMN_MULT,
    QUEEN_MOBILITY,
    KING_NO_FRIENDLY_PAWN,
    KING_NO_FRIENDLY_PAWN_ADJ,
    KING_FRIENDLY_PAWN_ADVANCED1,
    KING_NO_ENEMY_PAWN,
    KING_NO_ENEMY_PAWN_ADJ,
    KING_PRESSURE_MULT,
    PARAM_COUNT
};

constexpr int kParamCount = PARAM_COUNT;
constexpr int kMaterialParams = 5;

// Name and sign (+1 bonus, -1 penalty) per parameter, indexed by Param.
const char* param_name(int index);
int param_sign(int index);
int param_max(int index);  // 1023 for material, 63 for positional
int param_index(std::string_view name);  // -1 when unknown

struct EvalParams {
    std::array<int, kParamCount> values{};

    int& operator[](int i) { return values[i]; }
    int operator[](int i) const { return values[i]; }
    bool operator==(const EvalParams&) const = default;
};

// Per-parameter feature counts for one position, each White minus Black.
using FeatureVector = std::array<int, kParamCount>;

// Counts every feature the evaluation knows about. Deterministic; mirroring
// the position negates every component.
FeatureVector extract_features(const chess::Position& p);

// Centipawn score from White's point of view: the signed dot product of
// extract_features(p) with params.
int evaluate(const chess::Position& p, const EvalParams& params);

// Flat NAME=value text form; '#' comments and blank lines are skipped on
// input. Reading requires each of the 35 names exactly once and values in
// range; violations raise ParseError naming the offender.
std::string format_params(const EvalParams& params);
EvalParams parse_params(std::string_view text);
EvalParams load_params_file(const std::string& path);
void save_params_file(const EvalParams& params, const std::string& path);

}  // namespace evotune
