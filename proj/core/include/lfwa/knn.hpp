#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lfwa/dataset.hpp"

namespace lfwa {

struct SplitSpec {
    double train_fraction = 0.7;
    bool stratified = true;
    std::uint64_t seed = 0;
};

struct Split {
    Dataset train;
    Dataset test;
    /// Row indices into the source dataset, ascending.
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

/// Shuffles each class with `spec.seed` and puts round-half-up(fraction * n_class)
/// rows (clamped to [1, n_class - 1]) into train. Rows keep their source order
/// within each side. Throws InputError naming the class if it has fewer than 2 rows.
Split stratified_split(const Dataset& data, const SplitSpec& spec);

/// Exact Euclidean k-nearest-neighbour vote. Distance ties go to the lower
/// training row; vote ties go to the smaller class id.
int knn_predict(const Dataset& train, std::span<const double> query, std::size_t k);

std::vector<int> knn_predict_all(const Dataset& train, const Matrix& queries, std::size_t k);

/// Percentage of positions where `predictions` equals `truth`.
double accuracy(std::span<const int> predictions, std::span<const int> truth);

}  // namespace lfwa
