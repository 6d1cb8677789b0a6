#include "moobox/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "moobox/dominance.hpp"

namespace moobox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSbxEps = 1e-14;

void crowd_class(const std::vector<Individual>& pop, const std::vector<std::size_t>& cls,
                 std::vector<double>& crowding) {
    const std::size_t m = pop[cls[0]].fx().size();
    if (cls.size() <= 2) {
        for (std::size_t i : cls) crowding[i] = kInf;
        return;
    }
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<std::size_t> order = cls;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].fx()[j] < pop[b].fx()[j];
        });
        crowding[order.front()] = kInf;
        crowding[order.back()] = kInf;
        const double range = pop[order.back()].fx()[j] - pop[order.front()].fx()[j];
        // A degenerate or infinite range contributes nothing; the latter would
        // otherwise turn an inf/inf quotient into NaN and poison the sort.
        if (range <= 0.0 || !std::isfinite(range)) continue;
        for (std::size_t k = 1; k + 1 < order.size(); ++k)
            crowding[order[k]] +=
                (pop[order[k + 1]].fx()[j] - pop[order[k - 1]].fx()[j]) / range;
    }
}

}  // namespace

RankedPopulation get_metrics(std::vector<Individual> pop) {
    if (pop.empty()) throw std::invalid_argument("get_metrics: empty population");
    const std::size_t n = pop.size();

    // Deb's fast non-dominated sort: domination counts plus dominated lists.
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> count(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) {
            if (dominates(pop[i].fx(), pop[k].fx())) {
                dominated[i].push_back(k);
                ++count[k];
            } else if (dominates(pop[k].fx(), pop[i].fx())) {
                dominated[k].push_back(i);
                ++count[i];
            }
        }

    std::vector<int> rank(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (count[i] == 0) current.push_back(i);

    std::vector<double> crowding(n, 0.0);
    int level = 0;
    while (!current.empty()) {
        crowd_class(pop, current, crowding);
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            rank[i] = level;
            for (std::size_t k : dominated[i])
                if (--count[k] == 0) next.push_back(k);
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
        ++level;
    }

    return {std::move(pop), std::move(rank), std::move(crowding)};
}

std::vector<Individual> get_parents(const RankedPopulation& rp, int count, CounterRng& rng) {
    if (rp.size() == 0) throw std::invalid_argument("get_parents: empty population");
    if (count <= 0) throw std::invalid_argument("get_parents: count must be positive");

    std::vector<Individual> parents;
    parents.reserve(static_cast<std::size_t>(count));
    if (rp.size() == 1) {
        while (parents.size() < static_cast<std::size_t>(count))
            parents.push_back(rp.members[0]);
        return parents;
    }

    auto duel = [&](std::size_t a, std::size_t b) {
        if (rp.rank[a] != rp.rank[b]) return rp.rank[a] < rp.rank[b] ? a : b;
        if (rp.crowding[a] != rp.crowding[b]) return rp.crowding[a] > rp.crowding[b] ? a : b;
        return rng.next_double() < 0.5 ? a : b;
    };

    while (parents.size() < static_cast<std::size_t>(count)) {
        const std::vector<std::size_t> perm = rng.permutation(rp.size());
        for (std::size_t k = 0; k + 1 < perm.size(); k += 2) {
            parents.push_back(rp.members[duel(perm[k], perm[k + 1])]);
            if (parents.size() == static_cast<std::size_t>(count)) break;
        }
    }
    return parents;
}

namespace {

// Bounded simulated binary crossover of one gene pair. Uses a single spread
// draw for both children and a coin to decide which child gets which side.
void sbx_gene(double p1, double p2, double yl, double yu, double eta, CounterRng& rng,
              double& c1_out, double& c2_out) {
    const double y1 = std::min(p1, p2);
    const double y2 = std::max(p1, p2);
    const double u = rng.next_double();
    const double span = y2 - y1;

    double beta = 1.0 + 2.0 * (y1 - yl) / span;
    double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    double betaq = u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                                    : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    double c1 = 0.5 * ((y1 + y2) - betaq * span);

    beta = 1.0 + 2.0 * (yu - y2) / span;
    alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    betaq = u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                             : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    double c2 = 0.5 * ((y1 + y2) + betaq * span);

    c1 = std::clamp(c1, yl, yu);
    c2 = std::clamp(c2, yl, yu);
    if (rng.next_double() <= 0.5) std::swap(c1, c2);
    c1_out = c1;
    c2_out = c2;
}

}  // namespace

std::vector<Vec> crossover(const std::vector<Individual>& parents, const Vec& lo,
                           const Vec& hi, const GeneticParams& params, CounterRng& rng) {
    if (parents.empty()) throw std::invalid_argument("crossover: no parents");
    const std::size_t n = parents[0].x().size();
    if (lo.size() != n || hi.size() != n)
        throw std::invalid_argument("crossover: bound length mismatch");

    std::vector<Vec> out;
    out.reserve(parents.size());
    for (std::size_t i = 0; i + 1 < parents.size(); i += 2) {
        Vec c1 = parents[i].x();
        Vec c2 = parents[i + 1].x();
        if (rng.next_double() <= params.crossover_prob) {
            for (std::size_t g = 0; g < n; ++g) {
                if (rng.next_double() > 0.5) continue;
                if (std::fabs(c1[g] - c2[g]) <= kSbxEps) continue;
                if (hi[g] - lo[g] <= 0.0) continue;
                sbx_gene(parents[i].x()[g], parents[i + 1].x()[g], lo[g], hi[g],
                         params.eta_c, rng, c1[g], c2[g]);
            }
        }
        out.push_back(std::move(c1));
        out.push_back(std::move(c2));
    }
    if (parents.size() % 2 != 0) out.push_back(parents.back().x());
    return out;
}

namespace {

void mutate_vector(Vec& x, const Vec& lo, const Vec& hi, double pm, double eta,
                   CounterRng& rng) {
    for (std::size_t g = 0; g < x.size(); ++g) {
        if (rng.next_double() > pm) continue;
        const double yl = lo[g], yu = hi[g];
        const double span = yu - yl;
        if (span <= 0.0) continue;
        const double y = x[g];
        const double d1 = (y - yl) / span;
        const double d2 = (yu - y) / span;
        const double u = rng.next_double();
        const double mpow = 1.0 / (eta + 1.0);
        double deltaq;
        if (u <= 0.5) {
            const double xy = 1.0 - d1;
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
            deltaq = std::pow(val, mpow) - 1.0;
        } else {
            const double xy = 1.0 - d2;
            const double val =
                2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
            deltaq = 1.0 - std::pow(val, mpow);
        }
        x[g] = std::clamp(y + deltaq * span, yl, yu);
    }
}

}  // namespace

std::vector<Vec> mutation(std::vector<Vec> offspring, const Vec& lo, const Vec& hi,
                          const GeneticParams& params, CounterRng& rng,
                          std::span<const Vec> avoid) {
    if (offspring.empty()) return offspring;
    const std::size_t n = offspring[0].size();
    if (lo.size() != n || hi.size() != n)
        throw std::invalid_argument("mutation: bound length mismatch");
    const double pm = params.mutation_prob.value_or(1.0 / static_cast<double>(n));

    for (auto& x : offspring) mutate_vector(x, lo, hi, pm, params.eta_m, rng);

    // Deduplication: each offspring must differ from all earlier offspring
    // and from every avoided vector (exact decision-space equality).
    auto is_dup = [&](const Vec& x, std::size_t upto) {
        for (std::size_t k = 0; k < upto; ++k)
            if (offspring[k] == x) return true;
        for (const Vec& a : avoid)
            if (a == x) return true;
        return false;
    };
    for (std::size_t i = 0; i < offspring.size(); ++i) {
        if (!is_dup(offspring[i], i)) continue;
        bool fixed = false;
        for (int r = 0; r < params.dedup_retries && !fixed; ++r) {
            mutate_vector(offspring[i], lo, hi, pm, params.eta_m, rng);
            fixed = !is_dup(offspring[i], i);
        }
        for (int r = 0; r < 100 && !fixed; ++r) {
            for (std::size_t g = 0; g < n; ++g) offspring[i][g] = rng.uniform(lo[g], hi[g]);
            fixed = !is_dup(offspring[i], i);
        }
    }
    return offspring;
}

RankedPopulation get_survivors(const RankedPopulation& rp, int capacity) {
    if (rp.size() == 0) throw std::invalid_argument("get_survivors: empty population");
    if (capacity <= 0) throw std::invalid_argument("get_survivors: capacity must be positive");
    if (rp.rank.size() != rp.size() || rp.crowding.size() != rp.size())
        throw std::invalid_argument("get_survivors: inconsistent metric lengths");

    std::vector<std::size_t> order(rp.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (rp.rank[a] != rp.rank[b]) return rp.rank[a] < rp.rank[b];
        return rp.crowding[a] > rp.crowding[b];
    });

    const std::size_t keep = std::min(rp.size(), static_cast<std::size_t>(capacity));
    RankedPopulation out;
    out.members.reserve(keep);
    out.rank.reserve(keep);
    out.crowding.reserve(keep);
    for (std::size_t k = 0; k < keep; ++k) {
        out.members.push_back(rp.members[order[k]]);
        out.rank.push_back(rp.rank[order[k]]);
        out.crowding.push_back(rp.crowding[order[k]]);
    }
    return out;
}

std::vector<Individual> nsga2(const ProblemSpec& p, const std::vector<Individual>& X0,
                              const GeneticParams& params, const GenerationBudget& budget,
                              CounterRng& rng) {
    if (X0.empty()) throw std::invalid_argument("nsga2: empty initial population");
    const int N = params.pop_size;
    RankedPopulation rp = get_survivors(get_metrics(X0), N);

    for (std::int64_t gen = 0; !budget.exhausted(gen); ++gen) {
        const std::vector<Individual> parents = get_parents(rp, N, rng);
        std::vector<Vec> off = crossover(parents, p.lower, p.upper, params, rng);
        std::vector<Vec> current;
        current.reserve(rp.size());
        for (const auto& ind : rp.members) current.push_back(ind.x());
        off = mutation(std::move(off), p.lower, p.upper, params, rng, current);

        std::vector<Individual> merged = rp.members;
        merged.reserve(merged.size() + off.size());
        for (auto& v : off) merged.emplace_back(p, std::move(v));
        rp = get_survivors(get_metrics(std::move(merged)), N);
    }
    return rp.members;
}

}  // namespace moobox
