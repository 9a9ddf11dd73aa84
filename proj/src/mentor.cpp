#include "evotune/mentor.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "evotune/chess/position.hpp"
#include "evotune/digest.hpp"
#include "evotune/search.hpp"

namespace evotune {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int clamp_score(long long v) {
    return static_cast<int>(std::clamp<long long>(v, -kScoreClamp, kScoreClamp));
}

}  // namespace

std::string position_key(const chess::Position& p) {
    std::string fen = chess::format_fen(p);
    // Drop the halfmove and fullmove clocks (the last two fields).
    for (int i = 0; i < 2; ++i) {
        auto cut = fen.find_last_of(' ');
        fen.erase(cut);
    }
    return fen;
}

ScoreCache::ScoreCache(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in) return;  // first use: the file appears on the first store
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto tab1 = line.find('\t');
        auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw MentorError("score cache " + path + " line " + std::to_string(lineno) +
                              ": expected <fen>\\t<depth>\\t<score>");
        try {
            int depth = std::stoi(line.substr(tab1 + 1, tab2 - tab1 - 1));
            int score = std::stoi(line.substr(tab2 + 1));
            entries_[{line.substr(0, tab1), depth}] = score;
        } catch (const std::exception&) {
            throw MentorError("score cache " + path + " line " + std::to_string(lineno) +
                              ": bad number");
        }
    }
}

std::optional<int> ScoreCache::lookup(const std::string& key, int depth) const {
    auto it = entries_.find({key, depth});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ScoreCache::store(const std::string& key, int depth, int score_cp) {
    entries_[{key, depth}] = score_cp;
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw MentorError("score cache: cannot write " + path_);
    out << key << '\t' << depth << '\t' << score_cp << '\n';
}

UciEngine::UciEngine(const std::string& command, int timeout_ms)
    : proc_(command), timeout_ms_(timeout_ms) {}

std::string UciEngine::expect(const std::string& token) {
    try {
        std::string line;
        while (proc_.read_line(line, timeout_ms_)) {
            auto toks = split_ws(line);
            if (!toks.empty() && toks[0] == token) return line;
        }
    } catch (const SubprocessError& e) {
        throw MentorError(e.what());
    }
    throw MentorError("engine: timed out waiting for '" + token + "'\n" +
                      proc_.transcript_tail());
}

void UciEngine::handshake() {
    try {
        proc_.write_line("uci");
        expect("uciok");
        proc_.write_line("isready");
        expect("readyok");
    } catch (const SubprocessError& e) {
        throw MentorError(e.what());
    }
}

int UciEngine::score_white(const chess::Position& p, int depth) {
    std::optional<int> stm_score;
    try {
        proc_.write_line("position fen " + chess::format_fen(p));
        proc_.write_line("go depth " + std::to_string(depth));
        std::string line;
        while (true) {
            if (!proc_.read_line(line, timeout_ms_))
                throw MentorError("engine: timed out waiting for 'bestmove'\n" +
                                  proc_.transcript_tail());
            auto toks = split_ws(line);
            if (toks.empty()) continue;
            if (toks[0] == "info") {
                for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
                    if (toks[i] != "score") continue;
                    long long v = 0;
                    try {
                        v = std::stoll(toks[i + 2]);
                    } catch (const std::exception&) {
                        throw MentorError("engine: unparsable score in '" + line + "'\n" +
                                          proc_.transcript_tail());
                    }
                    if (toks[i + 1] == "cp")
                        stm_score = clamp_score(v);
                    else if (toks[i + 1] == "mate")
                        stm_score = v > 0 ? kScoreClamp : -kScoreClamp;
                    break;
                }
            } else if (toks[0] == "bestmove") {
                break;
            }
        }
    } catch (const SubprocessError& e) {
        throw MentorError(e.what());
    }
    if (!stm_score)
        throw MentorError("engine: bestmove arrived without any score\n" +
                          proc_.transcript_tail());
    return p.side_to_move == chess::Color::White ? *stm_score : -*stm_score;
}

int synthetic_score(const chess::Position& p, const MentorConfig& cfg) {
    if (!cfg.hidden_params)
        throw MentorError("synthetic mentor: hidden parameter set not configured");
    long long raw = cfg.search_depth <= 1
                        ? evaluate(p, *cfg.hidden_params)
                        : search_score_white(p, *cfg.hidden_params, cfg.search_depth);
    if (cfg.noise_cp > 0) {
        std::mt19937_64 rng(fnv1a64(position_key(p)) ^ cfg.noise_seed);
        raw += std::uniform_int_distribution<int>(-cfg.noise_cp, cfg.noise_cp)(rng);
    }
    return clamp_score(raw);
}

std::vector<MentorScore> score_positions(const std::vector<chess::Position>& positions,
                                         const MentorConfig& cfg, ScoreCache* cache) {
    std::vector<MentorScore> out(positions.size());
    std::vector<std::size_t> pending;  // indices the cache could not answer
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out[i].position_id = position_key(positions[i]);
        if (cache) {
            if (auto hit = cache->lookup(out[i].position_id, cfg.search_depth)) {
                out[i].score_cp = *hit;
                continue;
            }
        }
        pending.push_back(i);
    }

    if (cfg.backend == MentorBackend::Synthetic) {
        for (auto i : pending) out[i].score_cp = synthetic_score(positions[i], cfg);
    } else {
        if (cfg.engine_command.empty())
            throw MentorError("external mentor: engine command not configured");
        int workers = std::max(1, cfg.processes);
        if (workers == 1 || pending.size() < 2) {
            UciEngine engine(cfg.engine_command, cfg.timeout_ms);
            engine.handshake();
            for (auto i : pending)
                out[i].score_cp = engine.score_white(positions[i], cfg.search_depth);
        } else {
            workers = std::min<int>(workers, static_cast<int>(pending.size()));
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        UciEngine engine(cfg.engine_command, cfg.timeout_ms);
                        engine.handshake();
                        for (std::size_t j = w; j < pending.size(); j += workers) {
                            auto i = pending[j];
                            out[i].score_cp =
                                engine.score_white(positions[i], cfg.search_depth);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        }
    }

    if (cache)
        for (auto i : pending) cache->store(out[i].position_id, cfg.search_depth, out[i].score_cp);
    return out;
}

}  // namespace evotune
