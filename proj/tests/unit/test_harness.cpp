#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "lfwa/errors.hpp"
#include "lfwa/harness.hpp"
#include "test_support.hpp"

using namespace lfwa;

namespace {

ExperimentConfig quick_config(Mode mode, std::size_t repeats = 3) {
    ExperimentConfig cfg;
    cfg.mode = mode;
    cfg.repeats = repeats;
    cfg.lfwa.max_evaluations = 60;
    return cfg;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("mode and format names round trip") {
    for (auto m : {Mode::fd_reduction, Mode::lfwa_fd, Mode::full_features_m1, Mode::lfwa_unconstrained_m2,
                   Mode::random_subset_baseline}) {
        CHECK(parse_mode(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_mode("lfwa"), ConfigError);
    CHECK(parse_format("records") == ReportFormat::records);
    CHECK_THROWS_AS(parse_format("json"), ConfigError);
    CHECK(parse_budget_unit("distinct_subsets") == BudgetUnit::distinct_subsets);
    CHECK_THROWS_AS(parse_budget_unit("calls"), ConfigError);
}

TEST_CASE("settings files map onto the experiment config") {
    std::istringstream in(
        "# comment\n"
        "dataset = segment.csv\n"
        "label-column = last\n"
        "expected_shape = 2310x19x7\n"
        "mode = lfwa_fd   # trailing comment\n"
        "repeats = 5\n"
        "seed = 100\n"
        "knn_k = 3\n"
        "train_fraction = 0.8\n"
        "max_evaluations = 300\n"
        "fd_override = 4\n"
        "budget = distinct_subsets\n");
    const auto cfg = config_from_settings(parse_settings(in, "/data"));
    REQUIRE(cfg.datasets.size() == 1);
    CHECK(cfg.datasets[0].paths == std::vector<std::string>{"/data/segment.csv"});
    CHECK(cfg.datasets[0].expected_rows == 2310u);
    CHECK(cfg.datasets[0].expected_dims == 19u);
    CHECK(cfg.datasets[0].expected_classes == 7);
    CHECK(cfg.repeats == 5);
    CHECK(cfg.base_seed == 100);
    CHECK(cfg.knn_k == 3);
    CHECK(cfg.train_fraction == 0.8);
    CHECK(cfg.lfwa.max_evaluations == 300);
    CHECK(cfg.fd_override == 4u);
    CHECK(cfg.budget == BudgetUnit::distinct_subsets);
}

TEST_CASE("defaults follow the published parameter settings") {
    const ExperimentConfig cfg;
    CHECK(cfg.lfwa.population_size == 5);
    CHECK(cfg.lfwa.gaussian_spark_count == 5);
    CHECK(cfg.lfwa.max_evaluations == 200);
    CHECK(cfg.lfwa.total_spark_cap == 50);
    CHECK(cfg.repeats == 20);
    CHECK(cfg.knn_k == 5);
    CHECK(cfg.train_fraction == 0.7);
}

TEST_CASE("bad settings are config errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        config_from_settings(parse_settings(in)).validate();
    };
    CHECK_THROWS_AS(parse("dataset = a.csv\nrepeats = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("dataset = a.csv\nunknown_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("dataset = a.csv\nrepeats = many\n"), ConfigError);
    CHECK_THROWS_AS(parse("dataset = a.csv\ntrain_fraction = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("repeats = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse("dataset = a.csv\nno equals sign\n"), ConfigError);
}

TEST_CASE("fd_reduction reports the cardinality budget") {
    const auto report = run_experiment(quick_config(Mode::fd_reduction), test::load_segment());
    REQUIRE(report.fd);
    CHECK(report.cardinality == 3);
    REQUIRE(report.reduction_rate);
    CHECK(std::round(*report.reduction_rate * 100) / 100 == 84.21);
    CHECK(report.trials.empty());

    const auto table = emit_report({report}, ReportFormat::table);
    const auto header = first_line(table);
    const auto pos_dataset = header.find("Dataset");
    const auto pos_fd = header.find("FD");
    const auto pos_ceil = header.find("ceil(FD)");
    const auto pos_rr = header.find("RR (%)");
    CHECK(pos_dataset < pos_fd);
    CHECK(pos_fd < pos_ceil);
    CHECK(pos_ceil < pos_rr);
    CHECK(table.find("84.21") != std::string::npos);
}

TEST_CASE("a single repeat aggregates to that trial") {
    auto cfg = quick_config(Mode::lfwa_fd, 1);
    const auto report = run_experiment(cfg, test::planted_dataset());
    REQUIRE(report.trials.size() == 1);
    const auto& t = report.trials.front();
    CHECK(report.aggregate.trials == 1);
    CHECK(report.aggregate.mean_accuracy == t.accuracy);
    CHECK(report.aggregate.best_accuracy == t.accuracy);
    CHECK(report.aggregate.std_accuracy == 0.0);
    CHECK(report.aggregate.modal_mask == t.mask);
    CHECK(report.aggregate.modal_count == 1);
}

TEST_CASE("aggregates are recomputable from the trial records") {
    const auto report = run_experiment(quick_config(Mode::random_subset_baseline, 7), test::load_spectf());
    std::set<std::uint64_t> seeds;
    double sum = 0.0;
    for (const auto& t : report.trials) {
        seeds.insert(t.seed);
        sum += t.accuracy;
        CHECK(t.mask.size() == report.cardinality);
    }
    CHECK(seeds.size() == 7);
    CHECK(*seeds.begin() == 1);
    const double mean = sum / 7.0;
    double ss = 0.0;
    for (const auto& t : report.trials) ss += (t.accuracy - mean) * (t.accuracy - mean);
    CHECK(std::abs(report.aggregate.mean_accuracy - mean) <= 1e-9);
    CHECK(std::abs(report.aggregate.std_accuracy - std::sqrt(ss / 6.0)) <= 1e-9);
    CHECK(report.aggregate == aggregate_trials(report.trials));
}

TEST_CASE("full-feature mode uses every column") {
    const auto report = run_experiment(quick_config(Mode::full_features_m1, 2), test::load_spectf());
    for (const auto& t : report.trials) CHECK(t.mask.size() == 44);
    CHECK(report.aggregate.mean_features == 44.0);
}

TEST_CASE("records round trip, timing included") {
    auto cfg = quick_config(Mode::lfwa_fd, 2);
    const auto report = run_experiment(cfg, test::planted_dataset());
    EmitOptions opts;
    opts.include_timing = true;
    std::istringstream in(emit_report({report}, ReportFormat::records, opts));
    const auto parsed = parse_records(in);
    REQUIRE(parsed.reports.size() == 1);
    CHECK(parsed.reports.front() == report);
}

TEST_CASE("records are byte-identical across repeated runs") {
    auto cfg = quick_config(Mode::lfwa_fd, 3);
    const auto data = test::planted_dataset();
    const auto a = emit_report({run_experiment(cfg, data)}, ReportFormat::records);
    const auto b = emit_report({run_experiment(cfg, data)}, ReportFormat::records);
    CHECK(a == b);
    // one record per trial, one aggregate, one run header
    CHECK(line_count(a) == 5);
}

TEST_CASE("an empty trial list renders a header-only table") {
    RunReport empty;
    empty.mode = Mode::lfwa_fd;
    empty.dataset = "nothing";
    EmitOptions opts;
    opts.published_reference = false;
    const auto table = emit_report({empty}, ReportFormat::table, opts);
    CHECK(table.find("Dataset") != std::string::npos);
    CHECK(line_count(table) <= 2);
}

TEST_CASE("comparison deltas match the accuracy columns") {
    auto cfg = quick_config(Mode::lfwa_fd, 2);
    const auto cmp = run_ablation(cfg, test::load_spectf());
    CHECK(cmp.reports.size() == 4);
    for (const auto& r : cmp.reports) {
        const double expect = cmp.report(Mode::lfwa_fd).aggregate.mean_accuracy - r.aggregate.mean_accuracy;
        CHECK(std::abs(cmp.delta(r.mode) - expect) <= 0.01);
    }
    CHECK(cmp.delta(Mode::lfwa_fd) == 0.0);

    EmitOptions timed;
    timed.include_timing = true;
    std::istringstream in(emit_comparison({cmp}, ReportFormat::records, timed));
    const auto parsed = parse_records(in);
    REQUIRE(parsed.comparisons.size() == 1);
    CHECK(parsed.comparisons.front() == cmp);

    const auto table = emit_comparison({cmp}, ReportFormat::table);
    for (const char* label : {"M1", "M2", "Random", "LFWA+FD"}) CHECK(table.find(label) != std::string::npos);
}

TEST_CASE("a failing trial becomes a failure record and the rest still run") {
    auto data = test::planted_dataset(40);
    // class 1 shrinks to a single row so every split throws
    for (std::size_t i = 0; i < data.rows(); ++i) data.labels[i] = 0;
    data.labels[7] = 1;
    const auto report = run_experiment(quick_config(Mode::full_features_m1, 3), data);
    CHECK(report.trials.size() == 3);
    CHECK(report.aggregate.failures == 3);
    CHECK(report.failed());
    for (const auto& t : report.trials) {
        REQUIRE(t.failure);
        CHECK(t.failure->find("class") != std::string::npos);
    }
}

TEST_CASE("datasets load through the configured specs") {
    ExperimentConfig cfg = quick_config(Mode::fd_reduction);
    DatasetSpec spec;
    spec.paths = {test::data_path("spectf.csv")};
    spec.label_column = LabelColumn::first();
    spec.name = "Spectf";
    cfg.datasets = {spec};
    const auto reports = run_experiment(cfg);
    REQUIRE(reports.size() == 1);
    CHECK(reports.front().dims == 44);
    CHECK(reports.front().cardinality == 3);
}
