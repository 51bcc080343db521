#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace lfwa::published {

/// Which of the two benchmark datasets a report name refers to.
enum class Benchmark { image_segmentation, spectf };

/// Case-insensitive match on common names ("segment", "image-segmentation", "spectf", ...).
std::optional<Benchmark> identify(std::string_view dataset_name);
std::string_view display_name(Benchmark b);

struct ReductionRow {
    Benchmark dataset;
    double fd;
    int cardinality;
    double reduction_rate;
};

struct AccuracyRow {
    Benchmark dataset;
    std::string_view method;
    std::string_view subset;
    double accuracy;
};

/// Published fractal-dimension reduction results.
std::span<const ReductionRow> reduction_rows();
/// Published comparison-method accuracies (competitors and LFWA+FD).
std::span<const AccuracyRow> comparison_rows();
/// Published ablation accuracies (M1, M2, LFWA+FD).
std::span<const AccuracyRow> ablation_rows();

std::optional<AccuracyRow> find(std::span<const AccuracyRow> rows, Benchmark dataset, std::string_view method);

}  // namespace lfwa::published
