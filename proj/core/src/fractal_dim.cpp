#include "lfwa/fractal_dim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "lfwa/dataio.hpp"
#include "lfwa/errors.hpp"

namespace lfwa {

namespace {

using CellKey = std::vector<std::int64_t>;

struct CellKeyHash {
    std::size_t operator()(const CellKey& key) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto v : key) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

template <typename KeyFn>
double sum_of_squared_counts(const Matrix& points, KeyFn&& key_of) {
    std::unordered_map<CellKey, std::uint64_t, CellKeyHash> cells;
    cells.reserve(points.rows());
    CellKey key(points.cols());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        key_of(points.row(i), key);
        ++cells[key];
    }
    std::uint64_t total = 0;
    for (const auto& [cell, count] : cells) total += count * count;
    return static_cast<double>(total);
}

struct LineFit {
    double slope = 0.0;
    double r_squared = 1.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    if (syy > 0.0) fit.r_squared = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return fit;
}

}  // namespace

ScaleGrid::ScaleGrid(std::vector<double> scales) : scales_(std::move(scales)) {
    if (scales_.size() < 6) throw InputError("scale grid needs at least 6 scales");
    for (std::size_t i = 0; i < scales_.size(); ++i) {
        if (!(scales_[i] > 0.0 && scales_[i] <= 1.0)) throw InputError("scale grid radii must lie in (0, 1]");
        if (i > 0 && !(scales_[i] < scales_[i - 1])) throw InputError("scale grid must be strictly descending");
    }
}

ScaleGrid ScaleGrid::dyadic(int k_min, int k_max) {
    if (k_min < 0 || k_max < k_min) throw InputError("invalid dyadic scale range");
    std::vector<double> s;
    for (int k = k_min; k <= k_max; ++k) s.push_back(std::ldexp(1.0, -k));
    return ScaleGrid(std::move(s));
}

double box_log_sum(const Matrix& points, double r) {
    if (points.rows() == 0) throw InputError("box_log_sum: empty dataset");
    if (!(r > 0.0 && r <= 1.0)) throw InputError("box_log_sum: r must lie in (0, 1]");
    const auto last = static_cast<std::int64_t>(std::ceil(1.0 / r)) - 1;
    const double total = sum_of_squared_counts(points, [&](std::span<const double> p, CellKey& key) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            key[j] = std::clamp(static_cast<std::int64_t>(std::floor(p[j] / r)), std::int64_t{0}, last);
        }
    });
    return std::log(total);
}

double saturation_sum(const Matrix& points) {
    if (points.rows() == 0) throw InputError("saturation_sum: empty dataset");
    std::vector<std::size_t> order(points.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto ra = points.row(a);
        auto rb = points.row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    double total = 0.0;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= order.size(); ++i) {
        if (i < order.size()) {
            auto ra = points.row(order[i - 1]);
            auto rb = points.row(order[i]);
            if (std::equal(ra.begin(), ra.end(), rb.begin())) {
                ++run;
                continue;
            }
        }
        total += static_cast<double>(run) * static_cast<double>(run);
        run = 1;
    }
    return total;
}

FDEstimate estimate_fd(const Matrix& points, const ScaleGrid& grid, const FDOptions& options) {
    if (points.rows() == 0) throw InputError("estimate_fd: empty dataset");
    if (options.min_window < 4) throw InputError("estimate_fd: min_window must be >= 4");
    if (options.min_window > grid.size()) throw InputError("estimate_fd: min_window exceeds the grid");

    const auto scales = grid.scales();
    const double n = static_cast<double>(points.rows());
    const double floor_sum = saturation_sum(points);

    FDEstimate est;
    if (floor_sum >= n * n) {
        // a single distinct point: one occupied cell at every scale
        est.degenerate = true;
        est.r_squared = 1.0;
        est.r_low = scales.back();
        est.r_high = scales.front();
        est.scales_used = scales.size();
        return est;
    }

    std::vector<double> log_r;
    std::vector<double> log_sum;
    const double threshold = std::log(floor_sum * (1.0 + options.saturation_tolerance));
    for (double r : scales) {
        const double s = box_log_sum(points, r);
        // sum C^2 is non-increasing as r shrinks, so the unsaturated scales form a prefix
        if (s <= threshold) break;
        log_r.push_back(std::log(r));
        log_sum.push_back(s);
    }
    const std::size_t usable = log_r.size();

    if (usable >= options.min_window) {
        bool found = false;
        LineFit best;
        std::size_t best_begin = 0;
        std::size_t best_len = 0;
        for (std::size_t len = options.min_window; len <= usable; ++len) {
            for (std::size_t begin = 0; begin + len <= usable; ++begin) {
                const auto fit = fit_line(std::span(log_r).subspan(begin, len), std::span(log_sum).subspan(begin, len));
                const double end_r = scales[begin + len - 1];
                const bool better = !found || fit.r_squared > best.r_squared ||
                                    (fit.r_squared == best.r_squared &&
                                     (len > best_len || (len == best_len && end_r < scales[best_begin + best_len - 1])));
                if (better) {
                    found = true;
                    best = fit;
                    best_begin = begin;
                    best_len = len;
                }
            }
        }
        est.fd = best.slope;
        est.r_squared = best.r_squared;
        est.r_high = scales[best_begin];
        est.r_low = scales[best_begin + best_len - 1];
        est.scales_used = best_len;
    } else {
        // too few resolved scales: anchor at r = 1, where every point shares one cell
        std::vector<double> x;
        std::vector<double> y;
        if (scales.front() < 1.0) {
            x.push_back(0.0);
            y.push_back(2.0 * std::log(n));
        }
        const std::size_t take = std::max<std::size_t>(usable, 1);
        for (std::size_t i = 0; i < take; ++i) {
            x.push_back(std::log(scales[i]));
            y.push_back(i < usable ? log_sum[i] : box_log_sum(points, scales[i]));
        }
        const auto fit = fit_line(x, y);
        est.fd = fit.slope;
        est.r_squared = fit.r_squared;
        est.r_high = 1.0;
        est.r_low = scales[take - 1];
        est.short_range = true;
        est.scales_used = x.size();
    }

    est.fd = std::clamp(est.fd, 0.0, static_cast<double>(points.cols()));
    est.cardinality = static_cast<int>(std::ceil(est.fd));
    return est;
}

FDEstimate estimate_dataset_fd(const Dataset& data, const ScaleGrid& grid, const FDOptions& options) {
    return estimate_fd(min_max_normalize(data).data.features, grid, options);
}

double reduction_rate(std::size_t dims, std::size_t cardinality) {
    if (cardinality < 1 || cardinality > dims) throw InputError("reduction_rate: cardinality must lie in [1, d]");
    return static_cast<double>(dims - cardinality) / static_cast<double>(dims) * 100.0;
}

}  // namespace lfwa
