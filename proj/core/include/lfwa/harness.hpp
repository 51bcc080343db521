#pragma once

/// @file harness.hpp
/// Seeded, repeated experiments over tabular datasets: fractal reduction
/// rates, constrained LFWA selection, ablations, and a random-subset floor.
/// Reports render either as aligned text tables or as JSON-lines records.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lfwa/dataio.hpp"
#include "lfwa/feature_select.hpp"
#include "lfwa/fractal_dim.hpp"
#include "lfwa/optimizer.hpp"

namespace lfwa {

enum class Mode { fd_reduction, lfwa_fd, full_features_m1, lfwa_unconstrained_m2, random_subset_baseline };

std::string to_string(Mode mode);
/// Accepts the names produced by to_string. Throws ConfigError otherwise.
Mode parse_mode(const std::string& text);
/// Row label used in tables ("LFWA+FD", "M1", ...).
std::string method_label(Mode mode);

enum class ReportFormat { table, records };
ReportFormat parse_format(const std::string& text);

struct ExperimentConfig {
    std::vector<DatasetSpec> datasets;
    Mode mode = Mode::lfwa_fd;
    std::size_t repeats = 20;
    std::uint64_t base_seed = 1;
    LfwaConfig lfwa;
    std::size_t knn_k = 5;
    double train_fraction = 0.7;
    bool stratified = true;
    std::optional<std::size_t> fd_override;
    BudgetUnit budget = BudgetUnit::objective_calls;
    bool record_timing = false;

    /// Throws ConfigError on out-of-range values.
    void validate(bool require_datasets = true) const;
};

/// Ordered key/value pairs from a config file and/or the command line.
/// Dataset-level keys (dataset, label_column, name, header, delimiter,
/// expected_shape) may repeat and are matched to datasets by position;
/// a single value applies to every dataset. Other keys: last one wins.
using Settings = std::vector<std::pair<std::string, std::string>>;

/// Reads `key = value` lines; '#' starts a comment. Relative dataset paths
/// are resolved against the file's directory.
Settings read_settings_file(const std::string& path);
Settings parse_settings(std::istream& in, const std::string& base_dir = {});

ExperimentConfig config_from_settings(const Settings& settings);

std::string_view to_string(BudgetUnit unit);
/// "distinct_subsets" or "objective_calls".
BudgetUnit parse_budget_unit(std::string_view text);

struct TrialRecord {
    std::uint64_t seed = 0;
    std::vector<std::size_t> mask;  // 1-based feature indices
    double accuracy = 0.0;
    std::size_t evaluations = 0;
    double wall_ms = 0.0;
    std::vector<GenerationStats> history;
    std::optional<std::string> failure;

    bool operator==(const TrialRecord&) const = default;
};

struct Aggregate {
    std::size_t trials = 0;  // successful trials
    std::size_t failures = 0;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // sample standard deviation, 0 for one trial
    double best_accuracy = 0.0;
    std::vector<std::size_t> modal_mask;
    std::size_t modal_count = 0;
    double mean_features = 0.0;

    bool operator==(const Aggregate&) const = default;
};

/// Recomputes the aggregate from successful trial records.
Aggregate aggregate_trials(const std::vector<TrialRecord>& trials);

struct RunReport {
    Mode mode = Mode::lfwa_fd;
    std::string dataset;
    std::size_t rows = 0;
    std::size_t dims = 0;
    int classes = 0;
    std::optional<FDEstimate> fd;
    /// Cardinality the selection was constrained to (0 if none).
    std::size_t cardinality = 0;
    std::optional<double> reduction_rate;
    std::vector<TrialRecord> trials;
    Aggregate aggregate;

    bool failed() const { return aggregate.failures > 0; }
    bool operator==(const RunReport&) const = default;
};

/// Several single-mode reports on one dataset, compared against a reference mode.
struct Comparison {
    std::string dataset;
    Mode reference = Mode::lfwa_fd;
    std::vector<RunReport> reports;

    /// reference mean accuracy minus `mode`'s mean accuracy.
    double delta(Mode mode) const;
    const RunReport& report(Mode mode) const;
    bool operator==(const Comparison&) const = default;
};

/// Runs config.mode on an already loaded dataset. Trial seeds are
/// base_seed .. base_seed + repeats - 1; a trial that throws is recorded as a
/// failure and the remaining trials still run.
RunReport run_experiment(const ExperimentConfig& config, const Dataset& data);
/// Loads every configured dataset and runs config.mode on each.
std::vector<RunReport> run_experiment(const ExperimentConfig& config);

/// Ablation: every mode in `modes` plus the LFWA+FD reference.
Comparison run_ablation(const ExperimentConfig& config, const Dataset& data,
                        const std::vector<Mode>& modes = {Mode::full_features_m1, Mode::lfwa_unconstrained_m2,
                                                          Mode::random_subset_baseline});

struct EmitOptions {
    bool include_timing = false;
    bool include_history = true;
    /// Append published reference rows to lfwa_fd tables when the dataset is recognised.
    bool published_reference = true;
};

std::string emit_report(const std::vector<RunReport>& reports, ReportFormat format, const EmitOptions& options = {});
std::string emit_comparison(const std::vector<Comparison>& comparisons, ReportFormat format,
                            const EmitOptions& options = {});

struct ParsedRecords {
    std::vector<RunReport> reports;
    std::vector<Comparison> comparisons;
};

/// Inverse of the `records` format of emit_report / emit_comparison.
ParsedRecords parse_records(std::istream& in);

}  // namespace lfwa
