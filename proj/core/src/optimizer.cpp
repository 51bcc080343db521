#include "lfwa/optimizer.hpp"

#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace lfwa {

void SearchBounds::validate() const {
    if (dim == 0) throw InputError("search space dimension must be positive");
    if (!(lower < upper)) throw InputError("search bounds require lower < upper");
}

bool SearchBounds::contains(std::span<const double> p) const {
    return std::all_of(p.begin(), p.end(), [this](double v) { return contains(v); });
}

void PbestArchive::offer(std::size_t i, const Individual& candidate) {
    if (candidate.fitness < entries_.at(i).fitness) entries_[i] = candidate;
}

void PbestArchive::update(std::span<const Individual> population) {
    for (std::size_t i = 0; i < population.size(); ++i) offer(i, population[i]);
}

std::size_t PbestArchive::core_index() const {
    return best_index(entries_);
}

void LfwaConfig::validate() const {
    if (population_size < 2) throw InputError("population_size must be >= 2");
    if (max_evaluations < population_size) throw InputError("max_evaluations must be >= population_size");
    if (!(xi > 0.0)) throw InputError("xi must be positive");
    if (total_spark_cap < population_size) throw InputError("total_spark_cap must be >= population_size");
}

std::vector<int> explosion_intensity(std::span<const double> fitnesses, double xi, std::size_t population) {
    if (fitnesses.empty()) throw InputError("explosion_intensity needs at least one fitness");
    if (!(xi > 0.0)) throw InputError("xi must be positive");
    for (double f : fitnesses) {
        if (!std::isfinite(f)) throw InputError("explosion_intensity: non-finite fitness");
    }
    const auto [lo, hi] = std::minmax_element(fitnesses.begin(), fitnesses.end());
    const double f_min = *lo;
    const double f_max = *hi;
    const int m = static_cast<int>(population == 0 ? fitnesses.size() : population);
    std::vector<int> counts;
    counts.reserve(fitnesses.size());
    for (double f : fitnesses) {
        const double exponent = (f_max - f) / (f_max - f_min + xi);
        const double s = std::ceil(std::pow(static_cast<double>(m), exponent));
        counts.push_back(std::clamp(static_cast<int>(s), 1, m));
    }
    return counts;
}

double average_intensity(std::span<const int> counts) {
    if (counts.empty()) throw InputError("average_intensity needs at least one count");
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    return total / static_cast<double>(counts.size());
}

Position explosion_radius(std::span<const double> firework, std::span<const double> pbest,
                          std::span<const double> core, int count, double mean_count) {
    if (pbest.size() != firework.size() || core.size() != firework.size()) {
        throw InputError("explosion_radius: position dimensions differ");
    }
    const auto target = count < mean_count ? pbest : core;
    Position radius(firework.size());
    for (std::size_t j = 0; j < radius.size(); ++j) radius[j] = target[j] - firework[j];
    return radius;
}

std::size_t best_index(std::span<const Individual> candidates) {
    if (candidates.empty()) throw InputError("best_index of an empty set");
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (candidates[i].fitness < candidates[best].fitness) best = i;
    }
    return best;
}

std::vector<int> apply_spark_cap(std::vector<int> counts, std::size_t cap) {
    const long total = std::accumulate(counts.begin(), counts.end(), 0L);
    if (total <= static_cast<long>(cap)) return counts;
    const double scale = static_cast<double>(cap) / static_cast<double>(total);
    for (int& c : counts) c = std::max(1, static_cast<int>(std::floor(c * scale)));
    return counts;
}

namespace {

std::string format_position(std::span<const double> p) {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t j = 0; j < p.size(); ++j) os << (j ? ", " : "") << p[j];
    os << ']';
    return os.str();
}

std::vector<double> fitness_of(std::span<const Individual> xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.fitness);
    return out;
}

}  // namespace

OptimizeResult optimize(const Objective& objective, const SearchBounds& bounds, const LfwaConfig& config) {
    return optimize(CountedObjective([&objective](std::span<const double> p) { return Evaluation{objective(p), true}; }),
                    bounds, config);
}

OptimizeResult optimize(const CountedObjective& objective, const SearchBounds& bounds, const LfwaConfig& config) {
    bounds.validate();
    config.validate();

    Rng rng(config.rng_seed);
    OptimizeResult result;
    result.best.fitness = std::numeric_limits<double>::infinity();

    const std::size_t call_limit = config.effective_call_limit();
    auto exhausted = [&] { return result.evaluations >= config.max_evaluations || result.calls >= call_limit; };
    auto evaluate = [&](Position p) {
        const auto [f, charged] = objective(p);
        ++result.calls;
        if (charged) ++result.evaluations;
        if (!std::isfinite(f)) {
            throw RuntimeFailure("objective returned a non-finite value at position " + format_position(p));
        }
        Individual ind{std::move(p), f};
        if (ind.fitness < result.best.fitness) result.best = ind;
        return ind;
    };

    const std::size_t m = config.population_size;
    std::vector<Individual> population;
    population.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Position p(bounds.dim);
        for (double& v : p) v = bounds.lower + rng.uniform() * (bounds.upper - bounds.lower);
        population.push_back(evaluate(std::move(p)));
    }

    PbestArchive archive(population);
    result.population_fitness.push_back(fitness_of(population));
    result.pbest_fitness.push_back(fitness_of(archive.entries()));
    result.history.push_back({0, result.best.fitness, result.evaluations, {}});

    for (std::size_t generation = 1; !exhausted(); ++generation) {
        const auto fitness = fitness_of(population);
        const auto counts = apply_spark_cap(explosion_intensity(fitness, config.xi), config.total_spark_cap);
        const double mean_count = average_intensity(counts);
        const Individual core = archive.core();

        std::vector<Position> sparks;
        for (std::size_t i = 0; i < m; ++i) {
            const auto radius = explosion_radius(population[i].position, archive[i].position, core.position,
                                                 counts[i], mean_count);
            auto es = generate_explosion_sparks(population[i].position, radius, counts[i], bounds, rng,
                                                config.per_dimension_beta);
            std::move(es.begin(), es.end(), std::back_inserter(sparks));
        }
        auto gs = gaussian_sparks(population, config.gaussian_spark_count, bounds, rng);
        std::move(gs.begin(), gs.end(), std::back_inserter(sparks));

        std::vector<Individual> candidates;
        candidates.reserve(2 * m + 1 + sparks.size());
        candidates.insert(candidates.end(), population.begin(), population.end());
        candidates.insert(candidates.end(), archive.entries().begin(), archive.entries().end());
        candidates.push_back(core);
        for (auto& s : sparks) {
            if (exhausted()) break;
            candidates.push_back(evaluate(std::move(s)));
        }

        population = elite_random_select(std::span<const Individual>(candidates), m, rng);
        archive.update(population);

        result.population_fitness.push_back(fitness_of(population));
        result.pbest_fitness.push_back(fitness_of(archive.entries()));
        result.history.push_back({generation, result.best.fitness, result.evaluations, counts});
    }

    result.pbest.assign(archive.entries().begin(), archive.entries().end());
    return result;
}

void write_history(std::ostream& os, std::span<const GenerationStats> history) {
    char buf[96];
    for (const auto& g : history) {
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g\n", g.generation, g.evaluations, g.best_fitness);
        os << buf;
    }
}

std::vector<GenerationStats> read_history(std::istream& is) {
    std::vector<GenerationStats> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        GenerationStats g;
        std::string best;
        if (!(ls >> g.generation >> g.evaluations >> best)) {
            throw InputError("malformed history line: " + line);
        }
        g.best_fitness = std::stod(best);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace lfwa
