#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "evotune/genome.hpp"

namespace evotune {

struct GAConfig {
    int population_size = 1000;  // must be even and >= 2
    double crossover_rate = 0.75;
    double mutation_rate = 0.002;  // per bit
    int generations = 300;
    int sample_size = 1000;  // positions drawn per generation
    std::uint64_t seed = 0;
};

struct Organism {
    Chromosome chromosome;
    // Sum over the scored positions of |mentor score - organism score|,
    // each term clamped to +-3000 before differencing. Kept as a sum so
    // selection stays in exact integer arithmetic; divide by the position
    // count only when reporting centipawns.
    long long error_sum = 0;
};

// Roulette weights: (worst error - own error) + count, which equals
// count * ((max mean error - own mean error) + 1 cp). Every weight is
// >= count, so even a uniform population keeps a valid wheel.
std::vector<long long> selection_weights(const std::vector<long long>& error_sums,
                                         long long position_count);

// One spin of the wheel; draws a single integer in [0, total).
std::size_t select_index(const std::vector<long long>& weights, std::mt19937_64& rng);

// Single-point crossover: exchange the suffixes starting at `cut`
// (1..kChromosomeBits-1, so both children mix material from both parents).
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            int cut);

// Independent per-bit flips.
void mutate(Chromosome& c, double rate, std::mt19937_64& rng);

std::vector<Chromosome> random_population(int n, std::mt19937_64& rng);

// Breeds the next population from a fully scored one: proportional
// selection, crossover with cfg.crossover_rate, per-bit mutation, then
// the best scored chromosome survives unchanged, placed at the slot of
// the worst scored organism.
std::vector<Chromosome> next_generation(const std::vector<Organism>& scored,
                                        long long position_count, const GAConfig& cfg,
                                        std::mt19937_64& rng);

}  // namespace evotune
