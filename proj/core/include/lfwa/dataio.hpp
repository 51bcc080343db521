#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lfwa/dataset.hpp"

namespace lfwa {

/// Where the class label lives in each row.
struct LabelColumn {
    enum class Kind { first, last, named };
    Kind kind = Kind::last;
    std::string name;

    static LabelColumn first() { return {Kind::first, {}}; }
    static LabelColumn last() { return {Kind::last, {}}; }
    static LabelColumn named(std::string n) { return {Kind::named, std::move(n)}; }
    /// "first", "last", or a header column name.
    static LabelColumn parse(const std::string& text);
};

struct DatasetSpec {
    /// One or more files, concatenated in order (e.g. a train and a test file).
    std::vector<std::string> paths;
    LabelColumn label_column;
    /// Field separator; nullopt accepts commas and/or whitespace.
    std::optional<char> delimiter;
    bool header = false;
    std::string name;
    std::optional<std::size_t> expected_rows;
    std::optional<std::size_t> expected_dims;
    std::optional<int> expected_classes;
};

/// Parses delimited text into a Dataset. Raw label strings are mapped to
/// contiguous ids in lexicographic order. Throws DataError with row/column
/// diagnostics on malformed input.
Dataset load_dataset(const DatasetSpec& spec);
Dataset parse_dataset(std::istream& in, const DatasetSpec& spec, const std::string& source = "<stream>");

/// Writes CSV with a header row and the label in the last column.
void write_dataset(std::ostream& out, const Dataset& data);

struct MinMaxParams {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<bool> constant;

    /// Applies the affine map; values outside the fitted range pass through unclamped.
    Dataset apply(const Dataset& data) const;
    Matrix apply(const Matrix& features) const;
};

struct Normalized {
    Dataset data;
    MinMaxParams params;
};

/// Maps every column to [0, 1] via (x - min) / (max - min). Constant columns become 0.
Normalized min_max_normalize(const Dataset& data);
MinMaxParams fit_min_max(const Matrix& features);

}  // namespace lfwa
