#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "evotune/chess/pgn.hpp"
#include "evotune/chess/position.hpp"
#include "evotune/evalfn.hpp"
#include "evotune/ga.hpp"
#include "evotune/mentor.hpp"

namespace evotune {

// A position with its mentor verdict (White's perspective, clamped).
struct ScoredPosition {
    chess::Position pos;
    int score_cp = 0;
};

struct Dataset {
    std::vector<ScoredPosition> train;
    std::vector<ScoredPosition> test;
};

// Draws at most one position per game: uniformly among the game's
// White-to-move positions, skipping the first eight plies (book) and any
// position where White stands in check, deduplicated across games by
// clock-stripped FEN. Throws when the games cannot yield `count` positions,
// reporting how many were usable.
std::vector<chess::Position> sample_positions(const std::vector<chess::PgnGame>& games,
                                              int count, std::mt19937_64& rng);

// Alternating split: even indices train, odd indices test.
Dataset split_dataset(const std::vector<ScoredPosition>& all);

// One record per line: "<FEN>\t<score_cp>".
void save_dataset(const std::string& path, const std::vector<ScoredPosition>& records);
std::vector<ScoredPosition> load_dataset(const std::string& path);

// Total |mentor - organism| over the batch, each side clamped to +-3000
// first. Kept as an exact integer sum; divide by batch size only for
// reporting. search_depth 0 scores with the bare evaluation.
long long organism_error_sum(const EvalParams& params,
                             const std::vector<ScoredPosition>& batch,
                             int search_depth = 0);

struct GenerationReport {
    int generation = 0;
    double best_error_cp = 0.0;
    double mean_error_cp = 0.0;
    double seconds = 0.0;
    Chromosome best;  // snapshot of the generation's best chromosome
};

struct RunConfig {
    GAConfig ga;
    bool resample = true;  // fresh per-generation subsample; false reuses one batch
    int organism_search_depth = 0;
    int threads = 1;
};

struct RunResult {
    Chromosome best;
    EvalParams best_params;
    double train_error_cp = 0.0;  // best error in the last evaluated generation
    double test_error_cp = 0.0;   // that chromosome on the full test split
    std::vector<GenerationReport> reports;
};

// Named scale presets.
struct Profile {
    int population;
    int generations;
    int sample_per_gen;
    int dataset_positions;  // total across train + test
};
Profile desk_profile();   // fits in CI
Profile paper_profile();  // full-scale run

using ReportSink = std::function<void(const GenerationReport&)>;

// The full loop: evolve cfg.ga.generations times, evaluating every
// organism on a seeded subsample of the train split each generation and
// reporting per-generation aggregates; afterwards the best organism of
// the last evaluated generation is scored on the untouched test split.
// generations == 0 degenerates to a single evaluation pass.
RunResult run_evolution(const Dataset& data, const RunConfig& cfg,
                        const ReportSink& sink = nullptr);

// CSV with header "generation,best_error_cp,mean_error_cp,seconds".
std::string report_csv(const std::vector<GenerationReport>& reports);
// One "<generation>\t<chromosome bits>" line per generation.
std::string snapshot_lines(const std::vector<GenerationReport>& reports);

}  // namespace evotune
