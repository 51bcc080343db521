#pragma once

/// @file feature_select.hpp
/// Wrapper feature selection driven by the LFWA optimizer. A position in
/// [0,1]^d is thresholded at 0.5 into a feature mask; under the fractal
/// constraint the mask is repaired to exactly ceil(FD) features; the mask is
/// scored by KNN accuracy on a fixed stratified holdout.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lfwa/dataset.hpp"
#include "lfwa/fractal_dim.hpp"
#include "lfwa/knn.hpp"
#include "lfwa/optimizer.hpp"

namespace lfwa {

using Bits = std::vector<std::uint8_t>;

/// Binary selection over d features.
class FeatureMask {
public:
    FeatureMask() = default;
    explicit FeatureMask(Bits bits);

    /// Builds a mask over `dims` features from 1-based indices.
    static FeatureMask from_indices(std::size_t dims, std::span<const std::size_t> one_based);

    const Bits& bits() const { return bits_; }
    std::size_t dims() const { return bits_.size(); }
    std::size_t popcount() const;
    /// Ascending, 1-based.
    std::vector<std::size_t> selected_indices() const;
    /// Ascending, 0-based; handy for column projection.
    std::vector<std::size_t> selected_columns() const;
    /// "{2, 11, 13}"
    std::string to_string() const;

    bool operator==(const FeatureMask&) const = default;
    auto operator<=>(const FeatureMask&) const = default;

private:
    Bits bits_;
};

/// bit j = 1 iff position_j >= 0.5.
Bits binarize(std::span<const double> position);

/// Returns `bits` when it already has k ones; otherwise the k dimensions with
/// the largest activation (lowest index on ties).
Bits repair_cardinality(std::span<const double> position, const Bits& bits, std::size_t k);

struct ClassifierConfig {
    std::size_t k = 5;
    SplitSpec split;
};

/// -accuracy (percent) of KNN trained on `train` and scored on `test`, both
/// projected onto the mask's columns.
double subset_fitness(const FeatureMask& mask, const Dataset& train, const Dataset& test,
                      const ClassifierConfig& config);

enum class ConstraintMode { fd, unconstrained };

/// What the optimizer's evaluation budget counts.
enum class BudgetUnit {
    /// Every objective call, repeats included.
    objective_calls,
    /// Each subset scored for the first time; repeats are served from a cache for free.
    distinct_subsets,
};

struct SelectionOutcome {
    FeatureMask mask;
    double accuracy = 0.0;
    /// Charged evaluations, in the unit of SelectionOptions::budget.
    std::size_t evaluations = 0;
    std::size_t objective_calls = 0;
    std::optional<FDEstimate> fd;
    /// Features the search was constrained to; 0 when unconstrained.
    std::size_t cardinality = 0;
    std::vector<GenerationStats> trace;
};

struct SelectionOptions {
    ConstraintMode mode = ConstraintMode::fd;
    BudgetUnit budget = BudgetUnit::objective_calls;
    /// Skips the estimator and uses this cardinality directly.
    std::optional<std::size_t> fd_override;
    /// Precomputed estimate to reuse instead of recomputing per call.
    std::optional<FDEstimate> fd_estimate;
    /// Called for every mask the objective scores, with its fitness.
    std::function<void(const FeatureMask&, double)> on_evaluate;
};

/// Holdout split with min-max parameters fitted on the training side only.
Split normalized_split(const Dataset& data, const SplitSpec& spec);

SelectionOutcome select_features(const Dataset& data, const LfwaConfig& lfwa, const ClassifierConfig& classifier,
                                 const SelectionOptions& options = {});

}  // namespace lfwa
