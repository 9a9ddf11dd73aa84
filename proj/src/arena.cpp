#include "evotune/arena.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "evotune/chess/movegen.hpp"
#include "evotune/chess/pgn.hpp"
#include "evotune/search.hpp"

namespace evotune {

namespace {

constexpr int kMoveCapPlies = 300;

// Position identity for repetition counting: FEN without the clocks.
std::string repetition_key(const chess::Position& p) {
    std::string fen = chess::format_fen(p);
    for (int i = 0; i < 2; ++i) fen.erase(fen.find_last_of(' '));
    return fen;
}

GameRecord play_game(const EvalParams& white, const EvalParams& black,
                     const Opening& opening, int depth) {
    GameRecord rec;
    chess::Position p = chess::start_position();
    std::map<std::string, int> seen;
    ++seen[repetition_key(p)];
    for (const auto& m : opening) {
        rec.moves.push_back(m);
        p = chess::apply_move(p, m);
        ++seen[repetition_key(p)];
    }
    while (true) {
        if (p.halfmove_clock >= 100) {
            rec.result = "1/2-1/2";
            rec.termination = "fifty-move rule";
            return rec;
        }
        if (static_cast<int>(rec.moves.size()) >= kMoveCapPlies) {
            rec.result = "1/2-1/2";
            rec.termination = "move cap";
            return rec;
        }
        if (chess::generate_moves(p).empty()) {
            if (chess::in_check(p, p.side_to_move)) {
                rec.result = p.side_to_move == chess::Color::White ? "0-1" : "1-0";
                rec.termination = "checkmate";
            } else {
                rec.result = "1/2-1/2";
                rec.termination = "stalemate";
            }
            return rec;
        }
        const auto& mover = p.side_to_move == chess::Color::White ? white : black;
        auto m = search_best_move(p, mover, depth).best;
        rec.moves.push_back(m);
        p = chess::apply_move(p, m);
        if (++seen[repetition_key(p)] >= 3) {
            rec.result = "1/2-1/2";
            rec.termination = "threefold repetition";
            return rec;
        }
    }
}

}  // namespace

std::vector<Opening> load_openings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("openings: cannot read " + path);
    std::vector<Opening> openings;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        Opening opening;
        chess::Position p = chess::start_position();
        std::istringstream toks(line);
        std::string tok;
        try {
            while (toks >> tok) {
                auto m = chess::parse_uci_move(p, tok);
                opening.push_back(m);
                p = chess::apply_move(p, m);
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("openings: " + path + " line " +
                                     std::to_string(lineno) + ": " + e.what());
        }
        if (!opening.empty()) openings.push_back(std::move(opening));
    }
    return openings;
}

MatchResult play_match(const EvalParams& params_a, const EvalParams& params_b, int games,
                       int depth, const std::vector<Opening>& openings, int threads) {
    if (games <= 0 || games % 2 != 0)
        throw std::invalid_argument("play_match: game count must be even and positive");
    if (openings.empty()) throw std::invalid_argument("play_match: no openings");

    MatchResult result;
    result.games = games;
    result.records.resize(static_cast<std::size_t>(games));

    auto run_one = [&](int g) {
        int opening = (g / 2) % static_cast<int>(openings.size());
        bool a_white = g % 2 == 0;
        auto rec = play_game(a_white ? params_a : params_b, a_white ? params_b : params_a,
                             openings[static_cast<std::size_t>(opening)], depth);
        rec.opening = opening;
        rec.a_played_white = a_white;
        result.records[static_cast<std::size_t>(g)] = std::move(rec);
    };

    threads = std::max(1, std::min(threads, games));
    if (threads == 1) {
        for (int g = 0; g < games; ++g) run_one(g);
    } else {
        std::vector<std::thread> crew;
        for (int t = 0; t < threads; ++t)
            crew.emplace_back([&, t] {
                for (int g = t; g < games; g += threads) run_one(g);
            });
        for (auto& th : crew) th.join();
    }

    for (const auto& rec : result.records) {
        if (rec.result == "1/2-1/2")
            result.score_a += 0.5;
        else if ((rec.result == "1-0") == rec.a_played_white)
            result.score_a += 1.0;
    }
    result.win_pct = 100.0 * result.score_a / games;
    return result;
}

double elo_expected_score(double rating_diff) {
    return 1.0 / (std::pow(10.0, -rating_diff / 400.0) + 1.0);
}

double elo_diff(double expected_score) {
    if (!(expected_score > 0.0) || !(expected_score < 1.0))
        throw std::domain_error("elo_diff: expected score must lie strictly in (0,1)");
    // +0.0 folds the negative zero an exact tie produces.
    return -400.0 * std::log10(1.0 / expected_score - 1.0) + 0.0;
}

SuiteResult run_epd_suite(const std::vector<chess::EpdRecord>& suite,
                          const EvalParams& params, int depth) {
    SuiteResult out;
    for (const auto& rec : suite) {
        if (rec.best_moves.empty())
            throw std::invalid_argument("epd suite: record '" + rec.id +
                                        "' has no bm opcode");
        SuiteRecordResult r;
        r.id = rec.id;
        r.chosen = search_best_move(rec.pos, params, depth).best;
        for (const auto& bm : rec.best_moves) r.solved = r.solved || bm == r.chosen;
        out.solved += r.solved;
        out.records.push_back(r);
    }
    return out;
}

std::string match_csv(const MatchResult& m) {
    double w = m.games > 0 ? m.score_a / m.games : 0.5;
    char elo[32];
    if (w > 0.0 && w < 1.0)
        std::snprintf(elo, sizeof(elo), "%.2f", elo_diff(w));
    else
        std::snprintf(elo, sizeof(elo), "%s", w >= 1.0 ? "+inf" : "-inf");
    char row[128];
    std::snprintf(row, sizeof(row), "%d,%.1f,%.2f,%s\n", m.games, m.score_a, m.win_pct,
                  elo);
    return std::string("games,score_a,win_pct,elo_diff\n") + row;
}

std::string suite_csv(const SuiteResult& s) {
    std::string out = "id,solved,chosen_move\n";
    for (const auto& r : s.records)
        out += r.id + "," + (r.solved ? "1" : "0") + "," + chess::move_to_uci(r.chosen) +
               "\n";
    return out;
}

std::string match_pgn(const MatchResult& m, const std::string& name_a,
                      const std::string& name_b) {
    std::string out;
    for (std::size_t g = 0; g < m.records.size(); ++g) {
        const auto& rec = m.records[g];
        chess::PgnGame game;
        game.headers["Event"] = "Fixed-depth match";
        game.headers["Round"] = std::to_string(g + 1);
        game.headers["White"] = rec.a_played_white ? name_a : name_b;
        game.headers["Black"] = rec.a_played_white ? name_b : name_a;
        game.headers["Termination"] = rec.termination;
        game.moves = rec.moves;
        game.result = rec.result;
        out += chess::format_pgn(game);
        if (g + 1 < m.records.size()) out += "\n";
    }
    return out;
}

}  // namespace evotune
