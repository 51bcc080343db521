#include "lfwa/knn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfwa/errors.hpp"
#include "lfwa/rng.hpp"

namespace lfwa {

namespace {

std::size_t round_half_up(double x) {
    return static_cast<std::size_t>(std::floor(x + 0.5 + 1e-9));
}

using Neighbour = std::pair<double, std::size_t>;  // (squared distance, train row)

int vote(const Dataset& train, std::span<const Neighbour> nearest) {
    std::vector<int> tally(static_cast<std::size_t>(std::max(train.class_count, 1)), 0);
    for (const auto& [dist, row] : nearest) {
        const int label = train.labels[row];
        if (label >= static_cast<int>(tally.size())) tally.resize(static_cast<std::size_t>(label) + 1, 0);
        ++tally[static_cast<std::size_t>(label)];
    }
    // max_element returns the first maximum, i.e. the smallest class id
    return static_cast<int>(std::max_element(tally.begin(), tally.end()) - tally.begin());
}

int predict_with(const Dataset& train, std::span<const double> query, std::size_t k,
                 std::vector<Neighbour>& scratch) {
    const std::size_t n = train.rows();
    scratch.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = train.features.row(i);
        double d2 = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double diff = row[j] - query[j];
            d2 += diff * diff;
        }
        scratch[i] = {d2, i};
    }
    // pair ordering puts equal distances in row order
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k - 1), scratch.end());
    return vote(train, std::span<const Neighbour>(scratch.data(), k));
}

void check_query(const Dataset& train, std::size_t query_dims, std::size_t k) {
    if (query_dims != train.dims()) {
        throw InputError("knn: query has " + std::to_string(query_dims) + " features, training data has " +
                         std::to_string(train.dims()));
    }
    if (k < 1 || k > train.rows()) {
        throw InputError("knn: k = " + std::to_string(k) + " outside [1, " + std::to_string(train.rows()) + "]");
    }
}

}  // namespace

Split stratified_split(const Dataset& data, const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw InputError("train_fraction must lie in (0, 1)");
    }
    Rng rng(spec.seed);
    std::vector<bool> in_train(data.rows(), false);

    auto allocate = [&](std::vector<std::size_t>& rows) {
        std::shuffle(rows.begin(), rows.end(), rng.engine());
        std::size_t n_train = round_half_up(spec.train_fraction * static_cast<double>(rows.size()));
        n_train = std::clamp<std::size_t>(n_train, 1, rows.size() - 1);
        for (std::size_t i = 0; i < n_train; ++i) in_train[rows[i]] = true;
    };

    if (spec.stratified) {
        std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(data.class_count));
        for (std::size_t r = 0; r < data.rows(); ++r) by_class.at(static_cast<std::size_t>(data.labels[r])).push_back(r);
        for (std::size_t c = 0; c < by_class.size(); ++c) {
            if (by_class[c].empty()) continue;
            if (by_class[c].size() < 2) {
                const auto& cname = c < data.class_names.size() ? data.class_names[c] : std::to_string(c);
                throw InputError("stratified_split: class " + std::to_string(c) + " ('" + cname +
                                 "') has a single row and cannot appear on both sides");
            }
            allocate(by_class[c]);
        }
    } else {
        if (data.rows() < 2) throw InputError("split needs at least 2 rows");
        std::vector<std::size_t> all(data.rows());
        for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
        allocate(all);
    }

    Split out;
    for (std::size_t r = 0; r < data.rows(); ++r) (in_train[r] ? out.train_rows : out.test_rows).push_back(r);
    out.train = data.subset_rows(out.train_rows);
    out.test = data.subset_rows(out.test_rows);
    return out;
}

int knn_predict(const Dataset& train, std::span<const double> query, std::size_t k) {
    check_query(train, query.size(), k);
    std::vector<Neighbour> scratch;
    return predict_with(train, query, k, scratch);
}

std::vector<int> knn_predict_all(const Dataset& train, const Matrix& queries, std::size_t k) {
    check_query(train, queries.cols(), k);
    std::vector<Neighbour> scratch;
    std::vector<int> out;
    out.reserve(queries.rows());
    for (std::size_t q = 0; q < queries.rows(); ++q) out.push_back(predict_with(train, queries.row(q), k, scratch));
    return out;
}

double accuracy(std::span<const int> predictions, std::span<const int> truth) {
    if (predictions.size() != truth.size()) throw InputError("accuracy: prediction and truth lengths differ");
    if (predictions.empty()) throw InputError("accuracy: no predictions");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) correct += predictions[i] == truth[i];
    return 100.0 * static_cast<double>(correct) / static_cast<double>(predictions.size());
}

}  // namespace lfwa
