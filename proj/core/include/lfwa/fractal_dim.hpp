#pragma once

/// @file fractal_dim.hpp
/// Box-counting estimate of the correlation-type fractal dimension of a
/// point cloud, and the feature-cardinality budget derived from it.
///
/// For a lattice of cell side r over the unit hypercube, the statistic is
/// ln sum_i C_{r,i}^2 where C_{r,i} is the number of points in occupied cell i.
/// The dimension is the slope of that statistic against ln r over the range
/// of scales where the relation is linear.

#include <cstddef>
#include <span>
#include <vector>

#include "lfwa/dataset.hpp"

namespace lfwa {

/// Descending lattice sides r in (0, 1].
class ScaleGrid {
public:
    explicit ScaleGrid(std::vector<double> scales);

    /// r = 2^-k for k = k_min..k_max.
    static ScaleGrid dyadic(int k_min = 1, int k_max = 10);

    std::span<const double> scales() const { return scales_; }
    std::size_t size() const { return scales_.size(); }

private:
    std::vector<double> scales_;
};

struct FDEstimate {
    double fd = 0.0;
    /// Smallest and largest r of the fitted range.
    double r_low = 0.0;
    double r_high = 0.0;
    double r_squared = 0.0;
    int cardinality = 0;
    /// Every point coincides: the dimension is 0 by definition.
    bool degenerate = false;
    /// Fewer than min_window unsaturated scales were available; the fit
    /// used the r = 1 anchor plus whatever scales remained.
    bool short_range = false;
    std::size_t scales_used = 0;

    bool operator==(const FDEstimate&) const = default;
};

struct FDOptions {
    std::size_t min_window = 4;
    /// A scale is saturated once sum C^2 is within this relative margin of
    /// its finest-resolution value (every distinct point in its own cell).
    double saturation_tolerance = 0.05;
};

/// ln sum_i C_{r,i}^2 for points already normalized to [0,1]^d.
/// Coordinates equal to 1 fall in the last cell.
double box_log_sum(const Matrix& points, double r);

/// sum_u m_u^2 over groups of identical rows: the limit of sum C^2 as r -> 0.
double saturation_sum(const Matrix& points);

/// Estimate on points already normalized to [0,1]^d.
FDEstimate estimate_fd(const Matrix& points, const ScaleGrid& grid = ScaleGrid::dyadic(),
                       const FDOptions& options = {});

/// Min-max normalizes the feature matrix (constant columns -> 0) and estimates.
FDEstimate estimate_dataset_fd(const Dataset& data, const ScaleGrid& grid = ScaleGrid::dyadic(),
                               const FDOptions& options = {});

/// Percentage of features removed when only `cardinality` of `dims` are kept.
double reduction_rate(std::size_t dims, std::size_t cardinality);

}  // namespace lfwa
