#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lfwa/dataio.hpp"
#include "lfwa/errors.hpp"
#include "lfwa/harness.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kDataError = 2, kRuntimeFailure = 3 };

struct Options {
    std::string config_file;
    std::vector<std::string> datasets;
    std::vector<std::string> label_columns;
    std::vector<std::string> names;
    std::vector<std::string> shapes;
    bool header = false;
    std::optional<std::string> mode;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> repeats;
    std::optional<std::size_t> knn_k;
    std::optional<double> train_fraction;
    std::optional<std::size_t> fd_override;
    std::optional<std::size_t> max_evaluations;
    std::optional<std::string> budget;
    std::string out;
    std::string format = "table";
    bool timing = false;
    bool no_published = false;
};

void add_common(CLI::App& cmd, Options& o) {
    cmd.add_option("--config", o.config_file, "key = value settings file; flags override it");
    cmd.add_option("--dataset", o.datasets, "dataset file (repeatable; join train|test files with '|')");
    cmd.add_option("--label-column", o.label_columns, "first, last, or a header name (one, or one per dataset)");
    cmd.add_option("--name", o.names, "display name (one per dataset)");
    cmd.add_option("--expected-shape", o.shapes, "ROWSxDIMS[xCLASSES] check (one, or one per dataset)");
    cmd.add_flag("--header", o.header, "dataset files start with a header row");
    cmd.add_option("--seed", o.seed, "base seed; trial i uses seed + i");
    cmd.add_option("--out", o.out, "write the report here instead of stdout");
    cmd.add_option("--format", o.format, "table or records")->check(CLI::IsMember({"table", "records"}));
}

void add_search(CLI::App& cmd, Options& o) {
    cmd.add_option("--repeats", o.repeats, "independent trials per dataset");
    cmd.add_option("--knn-k", o.knn_k, "neighbours used by the classifier");
    cmd.add_option("--train-fraction", o.train_fraction, "training share of each split");
    cmd.add_option("--fd-override", o.fd_override, "use this cardinality instead of ceil(FD)");
    cmd.add_option("--max-evaluations", o.max_evaluations, "objective budget per trial");
    cmd.add_option("--budget", o.budget, "objective_calls or distinct_subsets");
    cmd.add_flag("--timing", o.timing, "include wall times in records");
    cmd.add_flag("--no-published", o.no_published, "omit published reference rows from tables");
}

bool is_dataset_key(const std::string& key) {
    static const std::set<std::string> keys{"dataset", "label_column", "name", "header", "delimiter", "expected_shape"};
    return keys.count(key) > 0;
}

lfwa::ExperimentConfig build_config(const Options& o) {
    lfwa::Settings settings;
    if (!o.config_file.empty()) settings = lfwa::read_settings_file(o.config_file);
    std::set<std::string> overridden;
    if (!o.label_columns.empty()) overridden.insert("label_column");
    if (!o.names.empty()) overridden.insert("name");
    if (!o.shapes.empty()) overridden.insert("expected_shape");
    std::erase_if(settings, [&](const auto& kv) {
        return overridden.count(kv.first) > 0 || (!o.datasets.empty() && is_dataset_key(kv.first));
    });
    auto put = [&](const std::string& key, const std::string& value) { settings.emplace_back(key, value); };
    for (const auto& v : o.datasets) put("dataset", v);
    for (const auto& v : o.label_columns) put("label_column", v);
    for (const auto& v : o.names) put("name", v);
    for (const auto& v : o.shapes) put("expected_shape", v);
    if (o.header) put("header", "true");
    if (o.mode) put("mode", *o.mode);
    if (o.seed) put("seed", std::to_string(*o.seed));
    if (o.repeats) put("repeats", std::to_string(*o.repeats));
    if (o.knn_k) put("knn_k", std::to_string(*o.knn_k));
    if (o.train_fraction) put("train_fraction", std::to_string(*o.train_fraction));
    if (o.fd_override) put("fd_override", std::to_string(*o.fd_override));
    if (o.max_evaluations) put("max_evaluations", std::to_string(*o.max_evaluations));
    if (o.budget) put("budget", *o.budget);
    if (o.timing) put("record_timing", "true");
    return lfwa::config_from_settings(settings);
}

void write_output(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw lfwa::ConfigError("cannot write '" + o.out + "'");
    file << text;
}

lfwa::EmitOptions emit_options(const Options& o, const lfwa::ExperimentConfig& config) {
    lfwa::EmitOptions e;
    e.include_timing = config.record_timing;
    e.published_reference = !o.no_published;
    return e;
}

int run_reports(const Options& o, lfwa::ExperimentConfig config) {
    config.validate();
    const auto reports = lfwa::run_experiment(config);
    write_output(o, lfwa::emit_report(reports, lfwa::parse_format(o.format), emit_options(o, config)));
    for (const auto& r : reports) {
        if (r.failed()) {
            std::cerr << "lfwa: " << r.aggregate.failures << " failed trial(s) on " << r.dataset << "\n";
            return kRuntimeFailure;
        }
    }
    return kOk;
}

int run_ablate(const Options& o, lfwa::ExperimentConfig config) {
    config.validate();
    std::vector<lfwa::Comparison> comparisons;
    for (const auto& spec : config.datasets) {
        comparisons.push_back(lfwa::run_ablation(config, lfwa::load_dataset(spec)));
    }
    write_output(o, lfwa::emit_comparison(comparisons, lfwa::parse_format(o.format), emit_options(o, config)));
    for (const auto& c : comparisons) {
        for (const auto& r : c.reports) {
            if (r.failed()) {
                std::cerr << "lfwa: failed trials in " << lfwa::method_label(r.mode) << " on " << c.dataset << "\n";
                return kRuntimeFailure;
            }
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractal-dimension guided feature selection with the Lite Fireworks Algorithm"};
    app.require_subcommand(1);

    Options o;
    auto* reduce = app.add_subcommand("reduce", "fractal dimension and reduction rate per dataset");
    add_common(*reduce, o);

    auto* select = app.add_subcommand("select", "repeated feature selection and KNN accuracy");
    add_common(*select, o);
    add_search(*select, o);
    select->add_option("--mode", o.mode, "lfwa_fd, full_features_m1, lfwa_unconstrained_m2, random_subset_baseline");

    auto* ablate = app.add_subcommand("ablate", "LFWA+FD against full features, unconstrained search and random subsets");
    add_common(*ablate, o);
    add_search(*ablate, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        auto config = build_config(o);
        if (reduce->parsed()) {
            config.mode = lfwa::Mode::fd_reduction;
            return run_reports(o, config);
        }
        if (select->parsed()) {
            if (config.mode == lfwa::Mode::fd_reduction) throw lfwa::ConfigError("select needs a selection mode");
            return run_reports(o, config);
        }
        return run_ablate(o, config);
    } catch (const lfwa::ConfigError& e) {
        std::cerr << "lfwa: config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const lfwa::DataError& e) {
        std::cerr << "lfwa: data error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "lfwa: " << e.what() << "\n";
        return kRuntimeFailure;
    }
}
