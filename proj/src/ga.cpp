#include "evotune/ga.hpp"

#include <algorithm>
#include <stdexcept>

namespace evotune {

std::vector<long long> selection_weights(const std::vector<long long>& error_sums,
                                         long long position_count) {
    if (error_sums.empty()) throw std::invalid_argument("selection_weights: no organisms");
    if (position_count <= 0) throw std::invalid_argument("selection_weights: empty sample");
    long long worst = *std::max_element(error_sums.begin(), error_sums.end());
    std::vector<long long> weights;
    weights.reserve(error_sums.size());
    for (long long e : error_sums) weights.push_back(worst - e + position_count);
    return weights;
}

std::size_t select_index(const std::vector<long long>& weights, std::mt19937_64& rng) {
    long long total = 0;
    for (long long w : weights) total += w;
    long long r = std::uniform_int_distribution<long long>(0, total - 1)(rng);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        r -= weights[i];
        if (r < 0) return i;
    }
    return weights.size() - 1;  // unreachable with positive weights
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            int cut) {
    if (cut < 1 || cut >= kChromosomeBits)
        throw std::invalid_argument("crossover: cut outside 1.." +
                                    std::to_string(kChromosomeBits - 1));
    Chromosome x = a, y = b;
    for (int i = cut; i < kChromosomeBits; ++i) std::swap(x.bits[i], y.bits[i]);
    return {x, y};
}

void mutate(Chromosome& c, double rate, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto& bit : c.bits)
        if (coin(rng) < rate) bit ^= 1;
}

std::vector<Chromosome> random_population(int n, std::mt19937_64& rng) {
    std::vector<Chromosome> pop;
    pop.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pop.push_back(random_chromosome(rng));
    return pop;
}

std::vector<Chromosome> next_generation(const std::vector<Organism>& scored,
                                        long long position_count, const GAConfig& cfg,
                                        std::mt19937_64& rng) {
    if (scored.size() < 2 || scored.size() % 2 != 0)
        throw std::invalid_argument("next_generation: population must be even and >= 2");
    std::vector<long long> sums;
    sums.reserve(scored.size());
    for (const auto& o : scored) sums.push_back(o.error_sum);
    auto weights = selection_weights(sums, position_count);

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> cut_dist(1, kChromosomeBits - 1);
    std::vector<Chromosome> next;
    next.reserve(scored.size());
    while (next.size() < scored.size()) {
        const auto& a = scored[select_index(weights, rng)].chromosome;
        const auto& b = scored[select_index(weights, rng)].chromosome;
        auto pair = coin(rng) < cfg.crossover_rate ? crossover(a, b, cut_dist(rng))
                                                   : std::make_pair(a, b);
        mutate(pair.first, cfg.mutation_rate, rng);
        mutate(pair.second, cfg.mutation_rate, rng);
        next.push_back(pair.first);
        next.push_back(pair.second);
    }

    // Elitism: the round-trip through selection and mutation must never
    // lose the best chromosome found so far.
    auto best = std::min_element(sums.begin(), sums.end()) - sums.begin();
    auto worst = std::max_element(sums.begin(), sums.end()) - sums.begin();
    next[static_cast<std::size_t>(worst)] = scored[static_cast<std::size_t>(best)].chromosome;
    return next;
}

}  // namespace evotune
