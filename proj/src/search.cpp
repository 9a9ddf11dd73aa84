#include "evotune/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace evotune {

using chess::Color;
using chess::Move;
using chess::MoveKind;
using chess::MoveList;
using chess::PieceKind;
using chess::Position;

namespace {

constexpr int kInfinity = kMateScore + 1;

int side_eval(const Position& p, const EvalParams& params) {
    int white = evaluate(p, params);
    return p.side_to_move == Color::White ? white : -white;
}

int victim_value(const Position& p, const Move& m) {
    if (m.kind == MoveKind::EnPassant) return 1;
    chess::Piece target = p.at(m.to);
    return target.empty() ? 0 : 1 + static_cast<int>(target.kind());
}

// Captures first, most valuable victim first, cheapest attacker first;
// stable so equal keys keep canonical order.
void order_captures_first(const Position& p, MoveList& moves) {
    std::stable_sort(moves.begin(), moves.end(), [&](const Move& a, const Move& b) {
        int va = victim_value(p, a), vb = victim_value(p, b);
        if (va != vb) return va > vb;
        if (va == 0) return false;
        return static_cast<int>(p.at(a.from).kind()) < static_cast<int>(p.at(b.from).kind());
    });
}

int negamax(const Position& p, const EvalParams& params, int depth, int ply, int alpha,
            int beta) {
    if (p.halfmove_clock >= 100) return 0;
    if (depth <= 0) return side_eval(p, params);

    MoveList moves;
    chess::generate_moves(p, moves);
    if (moves.empty())
        return chess::in_check(p, p.side_to_move) ? -(kMateScore - ply) : 0;
    order_captures_first(p, moves);

    int best = -kInfinity;
    for (const Move& m : moves) {
        int score = -negamax(chess::apply_move(p, m), params, depth - 1, ply + 1, -beta,
                             -alpha);
        if (score > best) best = score;
        if (score > alpha) alpha = score;
        if (alpha >= beta) break;
    }
    return best;
}

}  // namespace

SearchResult search_best_move(const Position& p, const EvalParams& params, int depth) {
    auto moves = chess::generate_moves(p);
    if (moves.empty())
        throw std::logic_error(chess::in_check(p, p.side_to_move)
                                   ? "search: side to move is checkmated"
                                   : "search: stalemate, no legal moves");
    SearchResult result{moves.front(), -kInfinity};
    int alpha = -kInfinity;
    for (const Move& m : moves) {
        int score = -negamax(chess::apply_move(p, m), params, depth - 1, 1, -kInfinity,
                             -alpha);
        if (score > result.score) {
            result.best = m;
            result.score = score;
        }
        if (score > alpha) alpha = score;
    }
    return result;
}

int search_score_white(const Position& p, const EvalParams& params, int depth) {
    if (p.halfmove_clock >= 100) return 0;
    int score;
    if (chess::generate_moves(p).empty())
        score = chess::in_check(p, p.side_to_move) ? -kMateScore : 0;
    else if (depth <= 0)
        score = side_eval(p, params);
    else
        score = search_best_move(p, params, depth).score;
    return p.side_to_move == Color::White ? score : -score;
}

}  // namespace evotune
