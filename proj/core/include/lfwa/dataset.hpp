#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lfwa {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<const double> values() const { return data_; }

    void append_row(std::span<const double> values);

    /// Rows picked by `indices`, in that order.
    Matrix select_rows(std::span<const std::size_t> indices) const;
    /// Columns picked by zero-based `indices`, in that order.
    Matrix select_cols(std::span<const std::size_t> indices) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Labelled tabular data. Labels are contiguous ids in [0, class_count);
/// `class_names[id]` is the raw label string the id was mapped from.
struct Dataset {
    std::string name;
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> column_names;
    std::vector<std::string> class_names;
    int class_count = 0;

    std::size_t rows() const { return features.rows(); }
    std::size_t dims() const { return features.cols(); }

    Dataset subset_rows(std::span<const std::size_t> indices) const;
    Dataset subset_cols(std::span<const std::size_t> indices) const;

    /// Throws DataError when labels or feature values break the invariants.
    void validate() const;

    bool operator==(const Dataset&) const = default;
};

}  // namespace lfwa
