#include "evotune/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "evotune/chess/movegen.hpp"
#include "evotune/search.hpp"

namespace evotune {

namespace {

int clamped_organism_score(const chess::Position& p, const EvalParams& params,
                           int search_depth) {
    long long s = search_depth <= 0 ? evaluate(p, params)
                                    : search_score_white(p, params, search_depth);
    return static_cast<int>(std::clamp<long long>(s, -kScoreClamp, kScoreClamp));
}

// Positions reachable in a game where White is to move, at least eight
// plies in, and White is not in check.
std::vector<chess::Position> eligible_positions(const chess::PgnGame& game) {
    std::vector<chess::Position> out;
    chess::Position p = chess::start_position();
    int plies = 0;
    for (const auto& m : game.moves) {
        p = chess::apply_move(p, m);
        ++plies;
        if (plies >= 8 && p.side_to_move == chess::Color::White &&
            !chess::in_check(p, chess::Color::White))
            out.push_back(p);
    }
    return out;
}

}  // namespace

std::vector<chess::Position> sample_positions(const std::vector<chess::PgnGame>& games,
                                              int count, std::mt19937_64& rng) {
    std::vector<std::vector<chess::Position>> candidates;
    for (const auto& g : games) {
        auto eligible = eligible_positions(g);
        if (!eligible.empty()) candidates.push_back(std::move(eligible));
    }
    if (static_cast<int>(candidates.size()) < count)
        throw std::runtime_error("sample_positions: " + std::to_string(count) +
                                 " positions requested but only " +
                                 std::to_string(candidates.size()) + " games are usable");
    std::vector<chess::Position> out;
    std::set<std::string> seen;
    for (const auto& eligible : candidates) {
        if (static_cast<int>(out.size()) == count) break;
        std::size_t pick =
            std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng);
        const auto& p = eligible[pick];
        if (seen.insert(position_key(p)).second) out.push_back(p);
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("sample_positions: only " + std::to_string(out.size()) +
                                 " distinct positions remained after deduplication (" +
                                 std::to_string(count) + " requested)");
    return out;
}

Dataset split_dataset(const std::vector<ScoredPosition>& all) {
    Dataset d;
    for (std::size_t i = 0; i < all.size(); ++i)
        (i % 2 == 0 ? d.train : d.test).push_back(all[i]);
    return d;
}

void save_dataset(const std::string& path, const std::vector<ScoredPosition>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dataset: cannot write " + path);
    for (const auto& r : records)
        out << chess::format_fen(r.pos) << '\t' << r.score_cp << '\n';
}

std::vector<ScoredPosition> load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("dataset: cannot read " + path);
    std::vector<ScoredPosition> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("dataset: " + path + " line " + std::to_string(lineno) +
                                     ": expected <fen>\\t<score_cp>");
        ScoredPosition r;
        try {
            r.pos = chess::parse_fen(line.substr(0, tab));
            r.score_cp = std::stoi(line.substr(tab + 1));
        } catch (const std::exception& e) {
            throw std::runtime_error("dataset: " + path + " line " + std::to_string(lineno) +
                                     ": " + e.what());
        }
        records.push_back(r);
    }
    return records;
}

long long organism_error_sum(const EvalParams& params,
                             const std::vector<ScoredPosition>& batch, int search_depth) {
    long long sum = 0;
    for (const auto& sp : batch)
        sum += std::abs(static_cast<long long>(sp.score_cp) -
                        clamped_organism_score(sp.pos, params, search_depth));
    return sum;
}

Profile desk_profile() { return {50, 100, 500, 2000}; }
Profile paper_profile() { return {1000, 300, 1000, 10000}; }

namespace {

// Error sums for every organism, split across threads; the batch is
// read-only so the shards are independent.
std::vector<long long> evaluate_population(const std::vector<Chromosome>& pop,
                                           const std::vector<ScoredPosition>& batch,
                                           const RunConfig& cfg) {
    std::vector<long long> sums(pop.size());
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            sums[i] = organism_error_sum(decode(pop[i]), batch, cfg.organism_search_depth);
    };
    int threads = std::clamp<int>(cfg.threads, 1, static_cast<int>(pop.size()));
    if (threads == 1) {
        worker(0, pop.size());
    } else {
        std::vector<std::thread> crew;
        std::size_t chunk = (pop.size() + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            std::size_t lo = t * chunk, hi = std::min(pop.size(), lo + chunk);
            if (lo < hi) crew.emplace_back(worker, lo, hi);
        }
        for (auto& th : crew) th.join();
    }
    return sums;
}

}  // namespace

RunResult run_evolution(const Dataset& data, const RunConfig& cfg, const ReportSink& sink) {
    const int n = cfg.ga.sample_size;
    if (n <= 0) throw std::invalid_argument("run_evolution: sample size must be positive");
    if (static_cast<int>(data.train.size()) < n)
        throw std::invalid_argument("run_evolution: train split has " +
                                    std::to_string(data.train.size()) +
                                    " positions, need at least " + std::to_string(n));
    std::mt19937_64 rng(cfg.ga.seed);
    auto pop = random_population(cfg.ga.population_size, rng);

    std::vector<ScoredPosition> batch;
    auto draw_batch = [&] {
        batch.clear();
        std::sample(data.train.begin(), data.train.end(), std::back_inserter(batch),
                    static_cast<std::size_t>(n), rng);
    };
    draw_batch();

    RunResult result;
    auto finish_generation = [&](const std::vector<long long>& sums) {
        auto best = std::min_element(sums.begin(), sums.end()) - sums.begin();
        result.best = pop[static_cast<std::size_t>(best)];
        result.train_error_cp = static_cast<double>(sums[static_cast<std::size_t>(best)]) /
                                static_cast<double>(batch.size());
        return best;
    };

    const int generations = cfg.ga.generations;
    if (generations == 0) {
        finish_generation(evaluate_population(pop, batch, cfg));
    }
    for (int g = 0; g < generations; ++g) {
        auto started = std::chrono::steady_clock::now();
        if (g > 0 && cfg.resample) draw_batch();
        auto sums = evaluate_population(pop, batch, cfg);
        auto best = finish_generation(sums);

        GenerationReport report;
        report.generation = g;
        report.best_error_cp = result.train_error_cp;
        long long total = 0;
        for (long long s : sums) total += s;
        report.mean_error_cp = static_cast<double>(total) /
                               (static_cast<double>(sums.size()) *
                                static_cast<double>(batch.size()));
        report.best = pop[static_cast<std::size_t>(best)];
        report.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                .count();
        result.reports.push_back(report);
        if (sink) sink(report);

        if (g + 1 < generations) {
            std::vector<Organism> scored(pop.size());
            for (std::size_t i = 0; i < pop.size(); ++i)
                scored[i] = {pop[i], sums[i]};
            pop = next_generation(scored, static_cast<long long>(batch.size()), cfg.ga,
                                  rng);
        }
    }

    result.best_params = decode(result.best);
    if (!data.test.empty())
        result.test_error_cp =
            static_cast<double>(organism_error_sum(result.best_params, data.test,
                                                   cfg.organism_search_depth)) /
            static_cast<double>(data.test.size());
    return result;
}

std::string report_csv(const std::vector<GenerationReport>& reports) {
    std::string out = "generation,best_error_cp,mean_error_cp,seconds\n";
    char row[128];
    for (const auto& r : reports) {
        std::snprintf(row, sizeof(row), "%d,%.4f,%.4f,%.3f\n", r.generation,
                      r.best_error_cp, r.mean_error_cp, r.seconds);
        out += row;
    }
    return out;
}

std::string snapshot_lines(const std::vector<GenerationReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += std::to_string(r.generation);
        out += '\t';
        out += to_string(r.best);
        out += '\n';
    }
    return out;
}

}  // namespace evotune
