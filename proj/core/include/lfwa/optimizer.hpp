#pragma once

/// @file optimizer.hpp
/// Lite Fireworks Algorithm (LFWA): a population minimizer over a box
/// [lower, upper]^d. Every operator of the generational loop is exposed
/// separately so it can be exercised on its own:
///
///   explosion_intensity -> average_intensity -> explosion_radius
///   -> generate_explosion_sparks / gaussian_sparks -> map_into_bounds
///   -> elite_random_select
///
/// `optimize` wires them together under an objective-evaluation budget.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "lfwa/errors.hpp"
#include "lfwa/rng.hpp"

namespace lfwa {

using Position = std::vector<double>;

struct SearchBounds {
    std::size_t dim = 0;
    double lower = 0.0;
    double upper = 1.0;

    /// Throws InputError unless dim > 0 and lower < upper.
    void validate() const;
    bool contains(double v) const { return v >= lower && v <= upper; }
    bool contains(std::span<const double> p) const;

    static SearchBounds unit(std::size_t dim) { return {dim, 0.0, 1.0}; }
};

/// Candidate solution. Fitness follows the minimization convention.
struct Individual {
    Position position;
    double fitness = 0.0;

    bool operator==(const Individual&) const = default;
};

/// Best-ever position of each firework slot.
class PbestArchive {
public:
    PbestArchive() = default;
    explicit PbestArchive(std::vector<Individual> initial) : entries_(std::move(initial)) {}

    /// Replaces entry i with `candidate` if it is strictly better.
    void offer(std::size_t i, const Individual& candidate);
    /// Offers population[i] to entry i for every i.
    void update(std::span<const Individual> population);

    /// Index of the core firework: minimal fitness, lowest index on ties.
    std::size_t core_index() const;
    const Individual& core() const { return entries_[core_index()]; }

    const Individual& operator[](std::size_t i) const { return entries_[i]; }
    std::size_t size() const { return entries_.size(); }
    std::span<const Individual> entries() const { return entries_; }

private:
    std::vector<Individual> entries_;
};

struct LfwaConfig {
    std::size_t population_size = 5;
    std::size_t gaussian_spark_count = 5;
    std::size_t max_evaluations = 200;
    std::size_t total_spark_cap = 50;
    double xi = 1e-12;
    std::uint64_t rng_seed = 0;
    /// When false, one displacement scalar is drawn per spark instead of one per dimension.
    bool per_dimension_beta = true;
    /// Upper bound on objective calls, charged or not. 0 means 20 * max_evaluations.
    std::size_t call_limit = 0;

    std::size_t effective_call_limit() const { return call_limit ? call_limit : 20 * max_evaluations; }

    void validate() const;
};

struct GenerationStats {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    std::size_t evaluations = 0;
    std::vector<int> spark_counts;

    bool operator==(const GenerationStats&) const = default;
};

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// Number of explosion sparks per firework:
/// S_i = ceil(M ^ ((f_max - f_i) / (f_max - f_min + xi))), clamped to [1, M].
/// M defaults to the number of fitness values.
std::vector<int> explosion_intensity(std::span<const double> fitnesses, double xi, std::size_t population = 0);

double average_intensity(std::span<const int> counts);

/// Direction vector each spark of firework i is displaced along.
/// Below-average fireworks move toward their own pbest, the rest toward the core firework.
Position explosion_radius(std::span<const double> firework, std::span<const double> pbest,
                          std::span<const double> core, int count, double mean_count);

/// Re-samples every out-of-range (or non-finite) coordinate uniformly in [lower, upper).
template <RandomSource R>
Position map_into_bounds(Position position, const SearchBounds& bounds, R& rng) {
    for (double& v : position) {
        if (!std::isfinite(v) || !bounds.contains(v)) {
            v = bounds.lower + rng.uniform() * (bounds.upper - bounds.lower);
        }
    }
    return position;
}

/// `count` sparks x + beta * radius, mapped into bounds. beta ~ U[0,1], drawn per
/// dimension unless `per_dimension_beta` is false.
template <RandomSource R>
std::vector<Position> generate_explosion_sparks(std::span<const double> firework,
                                                std::span<const double> radius, int count,
                                                const SearchBounds& bounds, R& rng,
                                                bool per_dimension_beta = true) {
    if (count < 1) throw InputError("explosion spark count must be >= 1");
    if (radius.size() != firework.size()) throw InputError("radius and firework dimensions differ");
    std::vector<Position> sparks;
    sparks.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Position spark(firework.begin(), firework.end());
        double beta = per_dimension_beta ? 0.0 : rng.uniform();
        for (std::size_t j = 0; j < spark.size(); ++j) {
            if (per_dimension_beta) beta = rng.uniform();
            spark[j] += beta * radius[j];
        }
        sparks.push_back(map_into_bounds(std::move(spark), bounds, rng));
    }
    return sparks;
}

/// Multiplies the listed dimensions by (N(0,1) + 1). No bounds mapping.
template <RandomSource R>
Position gaussian_mutate(std::span<const double> parent, std::span<const std::size_t> dims, R& rng) {
    Position out(parent.begin(), parent.end());
    for (auto j : dims) out.at(j) *= rng.normal() + 1.0;
    return out;
}

/// `count` Gaussian sparks. Each picks a parent uniformly, a dimension count n
/// uniformly in 1..d, then n distinct dimensions uniformly, and mutates them.
template <RandomSource R>
std::vector<Position> gaussian_sparks(std::span<const Individual> population, std::size_t count,
                                      const SearchBounds& bounds, R& rng) {
    if (population.empty()) throw InputError("gaussian_sparks needs a non-empty population");
    std::vector<Position> sparks;
    sparks.reserve(count);
    const std::size_t d = population.front().position.size();
    std::vector<std::size_t> dims(d);
    for (std::size_t s = 0; s < count; ++s) {
        const auto& parent = population[rng.index(population.size())].position;
        const std::size_t n = 1 + rng.index(d);
        std::iota(dims.begin(), dims.end(), std::size_t{0});
        // partial Fisher-Yates: first n entries become a uniform n-subset
        for (std::size_t j = 0; j < n; ++j) std::swap(dims[j], dims[j + rng.index(d - j)]);
        sparks.push_back(map_into_bounds(
            gaussian_mutate(parent, std::span<const std::size_t>(dims.data(), n), rng), bounds, rng));
    }
    return sparks;
}

/// Index of the minimal fitness, lowest index on ties.
std::size_t best_index(std::span<const Individual> candidates);

/// Next generation: the best candidate first, then M-1 candidates drawn
/// uniformly without replacement from the rest.
template <RandomSource R>
std::vector<Individual> elite_random_select(std::span<const Individual> candidates, std::size_t m, R& rng) {
    if (m == 0) throw InputError("selection size must be positive");
    if (candidates.size() < m) {
        throw InputError("elite_random_select: " + std::to_string(candidates.size()) +
                         " candidates for " + std::to_string(m) + " slots");
    }
    const std::size_t elite = best_index(candidates);
    std::vector<std::size_t> rest;
    rest.reserve(candidates.size() - 1);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i != elite) rest.push_back(i);
    }
    std::vector<Individual> out;
    out.reserve(m);
    out.push_back(candidates[elite]);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        std::swap(rest[j], rest[j + rng.index(rest.size() - j)]);
        out.push_back(candidates[rest[j]]);
    }
    return out;
}

/// Proportionally shrinks spark counts (floor, minimum 1) when their sum exceeds `cap`.
std::vector<int> apply_spark_cap(std::vector<int> counts, std::size_t cap);

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

using Objective = std::function<double(std::span<const double>)>;

/// Result of one objective call. Uncharged calls (e.g. cache hits) do not
/// consume the evaluation budget.
struct Evaluation {
    double fitness = 0.0;
    bool charged = true;
};
using CountedObjective = std::function<Evaluation(std::span<const double>)>;

struct OptimizeResult {
    Individual best;
    std::vector<GenerationStats> history;
    /// Charged evaluations.
    std::size_t evaluations = 0;
    /// All objective calls.
    std::size_t calls = 0;
    /// Archive state at termination.
    std::vector<Individual> pbest;
    /// Population fitness per generation (row g = fireworks entering generation g).
    std::vector<std::vector<double>> population_fitness;
    /// Archive fitness per generation, recorded after the archive update.
    std::vector<std::vector<double>> pbest_fitness;
};

/// Minimizes `objective` over `bounds` until config.max_evaluations objective
/// calls have been spent. Throws RuntimeFailure if the objective returns a
/// non-finite value.
OptimizeResult optimize(const Objective& objective, const SearchBounds& bounds, const LfwaConfig& config);

/// Same loop, but only charged calls count toward max_evaluations. Stops early
/// once config.effective_call_limit() calls have been made. Sparks of the last
/// generation are evaluated in order until either limit is reached.
OptimizeResult optimize(const CountedObjective& objective, const SearchBounds& bounds, const LfwaConfig& config);

/// One line per generation: "<generation> <evaluations> <best fitness>".
void write_history(std::ostream& os, std::span<const GenerationStats> history);
/// Inverse of write_history. Spark counts are not part of the format and come back empty.
std::vector<GenerationStats> read_history(std::istream& is);

}  // namespace lfwa
