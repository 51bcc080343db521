#include "lfwa/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lfwa/errors.hpp"

namespace lfwa {

void Matrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) {
        throw InputError("row has " + std::to_string(values.size()) + " values, matrix has " +
                         std::to_string(cols_) + " columns");
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        auto src = row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Matrix Matrix::select_cols(std::span<const std::size_t> indices) const {
    Matrix out(rows_, indices.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < indices.size(); ++j) out(r, j) = (*this)(r, indices[j]);
    }
    return out;
}

Dataset Dataset::subset_rows(std::span<const std::size_t> indices) const {
    Dataset out;
    out.name = name;
    out.features = features.select_rows(indices);
    out.labels.reserve(indices.size());
    for (auto i : indices) out.labels.push_back(labels[i]);
    out.column_names = column_names;
    out.class_names = class_names;
    out.class_count = class_count;
    return out;
}

Dataset Dataset::subset_cols(std::span<const std::size_t> indices) const {
    Dataset out;
    out.name = name;
    out.features = features.select_cols(indices);
    out.labels = labels;
    out.column_names.reserve(indices.size());
    for (auto j : indices) out.column_names.push_back(column_names.at(j));
    out.class_names = class_names;
    out.class_count = class_count;
    return out;
}

void Dataset::validate() const {
    if (labels.size() != features.rows()) {
        throw DataError("dataset '" + name + "': " + std::to_string(labels.size()) + " labels for " +
                        std::to_string(features.rows()) + " rows");
    }
    if (column_names.size() != features.cols()) {
        throw DataError("dataset '" + name + "': column name count does not match feature count");
    }
    for (std::size_t r = 0; r < rows(); ++r) {
        if (labels[r] < 0 || labels[r] >= class_count) {
            throw DataError("dataset '" + name + "': label out of range at row " + std::to_string(r + 1));
        }
        for (std::size_t c = 0; c < dims(); ++c) {
            if (!std::isfinite(features(r, c))) {
                throw DataError("dataset '" + name + "': non-finite value at row " + std::to_string(r + 1) +
                                ", column " + std::to_string(c + 1));
            }
        }
    }
}

}  // namespace lfwa
