#include "lfwa/feature_select.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lfwa/dataio.hpp"
#include "lfwa/errors.hpp"

namespace lfwa {

FeatureMask::FeatureMask(Bits bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw InputError("feature mask bits must be 0 or 1");
    }
}

FeatureMask FeatureMask::from_indices(std::size_t dims, std::span<const std::size_t> one_based) {
    Bits bits(dims, 0);
    for (auto i : one_based) {
        if (i < 1 || i > dims) throw InputError("feature index " + std::to_string(i) + " outside 1.." + std::to_string(dims));
        bits[i - 1] = 1;
    }
    return FeatureMask(std::move(bits));
}

std::size_t FeatureMask::popcount() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::size_t> FeatureMask::selected_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < bits_.size(); ++j) {
        if (bits_[j]) out.push_back(j);
    }
    return out;
}

std::vector<std::size_t> FeatureMask::selected_indices() const {
    auto out = selected_columns();
    for (auto& j : out) ++j;
    return out;
}

std::string FeatureMask::to_string() const {
    std::string out = "{";
    const auto idx = selected_indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(idx[i]);
    }
    return out + "}";
}

Bits binarize(std::span<const double> position) {
    Bits bits(position.size());
    for (std::size_t j = 0; j < position.size(); ++j) bits[j] = position[j] >= 0.5 ? 1 : 0;
    return bits;
}

Bits repair_cardinality(std::span<const double> position, const Bits& bits, std::size_t k) {
    const std::size_t d = position.size();
    if (bits.size() != d) throw InputError("repair_cardinality: bits and position lengths differ");
    if (k < 1 || k > d) throw InputError("repair_cardinality: k must lie in [1, d]");
    if (static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1})) == k) return bits;

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return position[a] > position[b]; });
    Bits out(d, 0);
    for (std::size_t i = 0; i < k; ++i) out[order[i]] = 1;
    return out;
}

double subset_fitness(const FeatureMask& mask, const Dataset& train, const Dataset& test,
                      const ClassifierConfig& config) {
    if (mask.dims() != train.dims() || train.dims() != test.dims()) {
        throw InputError("subset_fitness: mask, train and test column counts differ");
    }
    const auto cols = mask.selected_columns();
    if (cols.empty()) throw InputError("subset_fitness: mask selects no columns");
    const auto train_p = train.subset_cols(cols);
    const auto test_p = test.features.select_cols(cols);
    const auto predictions = knn_predict_all(train_p, test_p, config.k);
    return -accuracy(predictions, test.labels);
}

Split normalized_split(const Dataset& data, const SplitSpec& spec) {
    auto split = stratified_split(data, spec);
    const auto params = fit_min_max(split.train.features);
    split.train = params.apply(split.train);
    split.test = params.apply(split.test);
    return split;
}

SelectionOutcome select_features(const Dataset& data, const LfwaConfig& lfwa, const ClassifierConfig& classifier,
                                 const SelectionOptions& options) {
    const std::size_t d = data.dims();
    if (d == 0) throw InputError("select_features: dataset has no features");
    if (data.class_count < 2) throw InputError("select_features: need at least 2 classes");

    SelectionOutcome outcome;
    std::size_t k = 0;
    if (options.mode == ConstraintMode::fd) {
        if (options.fd_override) {
            k = *options.fd_override;
        } else {
            outcome.fd = options.fd_estimate ? *options.fd_estimate : estimate_dataset_fd(data);
            k = static_cast<std::size_t>(std::max(outcome.fd->cardinality, 1));
        }
        if (k < 1 || k > d) throw InputError("select_features: cardinality " + std::to_string(k) + " outside [1, d]");
        outcome.cardinality = k;
    }

    const auto split = normalized_split(data, classifier.split);

    std::map<Bits, double> cache;
    const bool charge_repeats = options.budget == BudgetUnit::objective_calls;
    auto score = [&](const Bits& bits) -> Evaluation {
        if (auto it = cache.find(bits); it != cache.end()) return {it->second, charge_repeats};
        FeatureMask mask(bits);
        // an empty subset cannot be scored; treat it as the worst possible accuracy
        const double f = mask.popcount() == 0 ? 0.0 : subset_fitness(mask, split.train, split.test, classifier);
        cache.emplace(bits, f);
        return {f, true};
    };

    auto mask_of = [&](std::span<const double> position) {
        auto bits = binarize(position);
        if (options.mode == ConstraintMode::fd) bits = repair_cardinality(position, bits, k);
        return bits;
    };

    const CountedObjective objective = [&](std::span<const double> position) {
        const auto bits = mask_of(position);
        const auto e = score(bits);
        if (options.on_evaluate) options.on_evaluate(FeatureMask(bits), e.fitness);
        return e;
    };

    const auto result = optimize(objective, SearchBounds::unit(d), lfwa);
    outcome.mask = FeatureMask(mask_of(result.best.position));
    outcome.accuracy = -result.best.fitness;
    outcome.evaluations = result.evaluations;
    outcome.objective_calls = result.calls;
    outcome.trace = result.history;
    return outcome;
}

}  // namespace lfwa
