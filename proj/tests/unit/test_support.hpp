#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lfwa/dataio.hpp"
#include "lfwa/dataset.hpp"
#include "lfwa/rng.hpp"

namespace test {

/// Random source returning fixed values; index() always picks 0.
struct FixedSource {
    double u = 0.5;
    double n = 0.0;
    double uniform() { return u; }
    double normal() { return n; }
    std::size_t index(std::size_t) { return 0; }
};

inline std::string data_path(const std::string& file) {
    return (std::filesystem::path(LFWA_DATA_DIR) / file).string();
}

inline lfwa::Dataset load_segment() {
    lfwa::DatasetSpec spec;
    spec.paths = {data_path("segment.csv")};
    spec.label_column = lfwa::LabelColumn::last();
    spec.name = "Image Segmentation";
    return lfwa::load_dataset(spec);
}

inline lfwa::Dataset load_spectf() {
    lfwa::DatasetSpec spec;
    spec.paths = {data_path("spectf.csv")};
    spec.label_column = lfwa::LabelColumn::first();
    spec.name = "Spectf";
    return lfwa::load_dataset(spec);
}

inline lfwa::Dataset make_dataset(lfwa::Matrix features, std::vector<int> labels) {
    lfwa::Dataset d;
    d.name = "synthetic";
    int classes = 0;
    for (int y : labels) classes = std::max(classes, y + 1);
    d.class_count = classes;
    for (int c = 0; c < classes; ++c) d.class_names.push_back(std::to_string(c));
    for (std::size_t j = 0; j < features.cols(); ++j) d.column_names.push_back("f" + std::to_string(j + 1));
    d.features = std::move(features);
    d.labels = std::move(labels);
    return d;
}

/// 1-based indices of the columns that drive the planted label.
inline const std::vector<std::size_t> kPlanted{2, 5, 9};

/// Ten uniform columns; the label is whether the three planted columns sum past 1.5.
inline lfwa::Dataset planted_dataset(std::size_t rows = 400, std::uint64_t seed = 42) {
    lfwa::Rng rng(seed);
    lfwa::Matrix x(rows, 10);
    std::vector<int> y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 10; ++j) x(i, j) = rng.uniform();
        for (auto c : kPlanted) s += x(i, c - 1);
        y[i] = s > 1.5 ? 1 : 0;
    }
    return make_dataset(std::move(x), std::move(y));
}

}  // namespace test
