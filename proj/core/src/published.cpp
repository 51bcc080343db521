#include "lfwa/published.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace lfwa::published {

namespace {

constexpr std::array kReduction{
    ReductionRow{Benchmark::image_segmentation, 2.3965, 3, 84.21},
    ReductionRow{Benchmark::spectf, 2.6869, 3, 93.18},
};

constexpr std::array kComparison{
    AccuracyRow{Benchmark::image_segmentation, "FSA+RS", "{1, 2, 13}", 84.02},
    AccuracyRow{Benchmark::image_segmentation, "AFSA+RS", "{1, 2, 10}", 87.00},
    AccuracyRow{Benchmark::image_segmentation, "BGSO+FD", "{1, 2, 15}", 77.64},
    AccuracyRow{Benchmark::image_segmentation, "IDGSO+MFD", "{1, 2, 15}", 77.64},
    AccuracyRow{Benchmark::image_segmentation, "FWA+FD", "{2, 12, 16}", 90.62},
    AccuracyRow{Benchmark::image_segmentation, "LFWA+FD", "{2, 11, 13}", 93.91},
    AccuracyRow{Benchmark::spectf, "FSA+RS", "{3, 20, 38, 43}", 71.23},
    AccuracyRow{Benchmark::spectf, "AFSA+RS", "{19, 26, 42, 43}", 73.08},
    AccuracyRow{Benchmark::spectf, "BGSO+FD", "{2, 26, 41}", 73.08},
    AccuracyRow{Benchmark::spectf, "IDGSO+MFD", "{26, 40, 43}", 73.18},
    AccuracyRow{Benchmark::spectf, "FWA+FD", "{34, 36, 40}", 76.23},
    AccuracyRow{Benchmark::spectf, "LFWA+FD", "{9, 26, 38}", 78.99},
};

constexpr std::array kAblation{
    AccuracyRow{Benchmark::image_segmentation, "M1", "{1, ..., d}", 95.72},
    AccuracyRow{Benchmark::image_segmentation, "M2", "{2, 4, 6, 8, 11, 14, 16}", 97.05},
    AccuracyRow{Benchmark::image_segmentation, "LFWA+FD", "{2, 11, 13}", 93.91},
    AccuracyRow{Benchmark::spectf, "M1", "{1, ..., d}", 74.14},
    AccuracyRow{Benchmark::spectf, "M2",
                "{2, 5, 6, 7, 11, 13, 15, 16, 18, 21, 23, 26, 28, 30, 31, 32, 34, 35, 36, 38, 40, 44}", 83.03},
    AccuracyRow{Benchmark::spectf, "LFWA+FD", "{9, 26, 38}", 78.99},
};

std::string squash(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

}  // namespace

std::optional<Benchmark> identify(std::string_view dataset_name) {
    const auto key = squash(dataset_name);
    if (key == "segment" || key == "segmentation" || key == "imagesegmentation" || key == "dataset1") {
        return Benchmark::image_segmentation;
    }
    if (key == "spectf" || key == "spectfheart" || key == "dataset2") return Benchmark::spectf;
    return std::nullopt;
}

std::string_view display_name(Benchmark b) {
    return b == Benchmark::image_segmentation ? "Image Segmentation" : "Spectf";
}

std::span<const ReductionRow> reduction_rows() { return kReduction; }
std::span<const AccuracyRow> comparison_rows() { return kComparison; }
std::span<const AccuracyRow> ablation_rows() { return kAblation; }

std::optional<AccuracyRow> find(std::span<const AccuracyRow> rows, Benchmark dataset, std::string_view method) {
    const auto it = std::find_if(rows.begin(), rows.end(),
                                 [&](const AccuracyRow& r) { return r.dataset == dataset && r.method == method; });
    if (it == rows.end()) return std::nullopt;
    return *it;
}

}  // namespace lfwa::published
