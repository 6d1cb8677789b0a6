#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "moobox/rng.hpp"
#include "moobox/types.hpp"

/// Evolutionary machinery: non-dominated sorting with crowding distances,
/// binary tournaments over two shuffles, simulated binary crossover,
/// polynomial mutation with offspring deduplication, and the elitist
/// generational loop. Every stochastic routine draws from the caller's
/// CounterRng in a fixed documented order (permutations, then per-pair
/// tiebreaks, then per-gene crossover draws, then per-gene mutation draws,
/// then deduplication draws), which makes whole runs reproducible per seed.
namespace moobox {

struct GeneticParams {
    int pop_size = 100;
    double crossover_prob = 0.9;
    double eta_c = 20.0;
    /// Per-gene mutation probability; defaults to 1/n when unset.
    std::optional<double> mutation_prob;
    double eta_m = 20.0;
    /// Re-mutation attempts for a duplicate offspring before falling back to
    /// a uniform redraw within bounds.
    int dedup_retries = 3;
};

/// A population annotated with domination ranks (0 is the non-dominated
/// front) and crowding distances computed per rank class.
struct RankedPopulation {
    std::vector<Individual> members;
    std::vector<int> rank;
    std::vector<double> crowding;

    std::size_t size() const { return members.size(); }
};

struct GenerationBudget {
    std::optional<std::int64_t> max_generations;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    bool exhausted(std::int64_t generation) const {
        if (max_generations && generation >= *max_generations) return true;
        return deadline && std::chrono::steady_clock::now() >= *deadline;
    }
};

/// Fast non-dominated sort plus crowding distances. Rank classes are
/// crowded independently: the extreme member for each objective gets
/// +infinity, interior members accumulate neighbour gaps normalized by the
/// class range, and a zero range contributes nothing. Ties in the per
/// objective sort keep input order.
RankedPopulation get_metrics(std::vector<Individual> pop);

/// `count` parents, produced by shuffling the population and playing one
/// binary tournament per consecutive pair of each shuffle: lower rank wins,
/// then larger crowding, then a fair coin.
std::vector<Individual> get_parents(const RankedPopulation& rp, int count, CounterRng& rng);

/// Simulated binary crossover over consecutive parent pairs. Offspring
/// genes are clipped into [lo, hi]; with probability 1 - crossover_prob a
/// pair is copied through unchanged.
std::vector<Vec> crossover(const std::vector<Individual>& parents, const Vec& lo,
                           const Vec& hi, const GeneticParams& params, CounterRng& rng);

/// Polynomial mutation applied gene-wise, followed by deduplication: an
/// offspring equal to an earlier offspring or to any vector in `avoid` is
/// re-mutated up to dedup_retries times and then redrawn uniformly in the
/// box. Genes with lo == hi never change.
std::vector<Vec> mutation(std::vector<Vec> offspring, const Vec& lo, const Vec& hi,
                          const GeneticParams& params, CounterRng& rng,
                          std::span<const Vec> avoid = {});

/// Elitist truncation: members ordered by (rank ascending, crowding
/// descending, input position) and the first min(capacity, size) kept with
/// their metric entries sliced along.
RankedPopulation get_survivors(const RankedPopulation& rp, int capacity);

/// The generational loop: tournament selection, crossover and mutation
/// inside the problem box, merge with the parents, metrics, truncation.
/// A zero-generation budget returns the truncated initial population.
std::vector<Individual> nsga2(const ProblemSpec& p, const std::vector<Individual>& X0,
                              const GeneticParams& params, const GenerationBudget& budget,
                              CounterRng& rng);

}  // namespace moobox
