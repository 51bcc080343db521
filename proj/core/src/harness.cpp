#include "lfwa/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lfwa/errors.hpp"
#include "lfwa/knn.hpp"
#include "lfwa/published.hpp"
#include "lfwa/rng.hpp"

namespace lfwa {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

namespace {

constexpr std::array kModeNames{
    std::pair{Mode::fd_reduction, "fd_reduction"},
    std::pair{Mode::lfwa_fd, "lfwa_fd"},
    std::pair{Mode::full_features_m1, "full_features_m1"},
    std::pair{Mode::lfwa_unconstrained_m2, "lfwa_unconstrained_m2"},
    std::pair{Mode::random_subset_baseline, "random_subset_baseline"},
};

}  // namespace

std::string to_string(Mode mode) {
    for (const auto& [m, name] : kModeNames) {
        if (m == mode) return name;
    }
    return "unknown";
}

Mode parse_mode(const std::string& text) {
    for (const auto& [m, name] : kModeNames) {
        if (text == name) return m;
    }
    throw ConfigError("unknown mode '" + text + "'");
}

std::string_view to_string(BudgetUnit unit) {
    return unit == BudgetUnit::distinct_subsets ? "distinct_subsets" : "objective_calls";
}

BudgetUnit parse_budget_unit(std::string_view text) {
    if (text == "distinct_subsets") return BudgetUnit::distinct_subsets;
    if (text == "objective_calls") return BudgetUnit::objective_calls;
    throw ConfigError("unknown budget unit '" + std::string(text) + "'");
}

std::string method_label(Mode mode) {
    switch (mode) {
        case Mode::fd_reduction: return "FD";
        case Mode::lfwa_fd: return "LFWA+FD";
        case Mode::full_features_m1: return "M1";
        case Mode::lfwa_unconstrained_m2: return "M2";
        case Mode::random_subset_baseline: return "Random";
    }
    return "?";
}

ReportFormat parse_format(const std::string& text) {
    if (text == "table") return ReportFormat::table;
    if (text == "records") return ReportFormat::records;
    throw ConfigError("unknown report format '" + text + "' (expected table or records)");
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

void ExperimentConfig::validate(bool require_datasets) const {
    if (require_datasets && datasets.empty()) throw ConfigError("no dataset configured");
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    if (knn_k < 1) throw ConfigError("knn_k must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("train_fraction must lie in (0, 1)");
    if (fd_override && *fd_override < 1) throw ConfigError("fd_override must be >= 1");
    try {
        lfwa.validate();
    } catch (const InputError& e) {
        throw ConfigError(e.what());
    }
}

namespace {

const std::set<std::string> kDatasetKeys{"dataset", "label_column", "name", "header", "delimiter", "expected_shape"};
const std::set<std::string> kScalarKeys{"mode",           "seed",           "repeats",
                                        "knn_k",          "train_fraction", "stratified",
                                        "fd_override",    "population_size", "gaussian_sparks",
                                        "max_evaluations", "total_spark_cap", "xi",
                                        "per_dimension_beta", "call_limit",  "budget",
                                        "record_timing",  "format",         "out"};

std::string trim_copy(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream is(s);
    while (std::getline(is, part, sep)) out.push_back(trim_copy(part));
    return out;
}

template <typename T>
T parse_unsigned(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value.front() == '-') throw std::invalid_argument("negative");
        const auto v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return static_cast<T>(v);
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a non-negative integer, got '" + value + "'");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("'" + key + "' expects true/false, got '" + value + "'");
}

std::optional<char> parse_delimiter(const std::string& value) {
    if (value == "auto" || value.empty()) return std::nullopt;
    if (value == "comma") return ',';
    if (value == "tab") return '\t';
    if (value == "space" || value == "whitespace") return std::nullopt;
    if (value == "semicolon") return ';';
    if (value.size() == 1) return value.front();
    throw ConfigError("unsupported delimiter '" + value + "'");
}

void apply_shape(DatasetSpec& spec, const std::string& value) {
    const auto parts = split_on(value, 'x');
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("expected_shape must look like ROWSxDIMS[xCLASSES]");
    auto field = [&](std::size_t i) -> std::optional<std::size_t> {
        if (parts[i] == "*") return std::nullopt;
        return parse_unsigned<std::size_t>("expected_shape", parts[i]);
    };
    spec.expected_rows = field(0);
    spec.expected_dims = field(1);
    if (parts.size() == 3) {
        if (auto c = field(2)) spec.expected_classes = static_cast<int>(*c);
    }
}

}  // namespace

Settings parse_settings(std::istream& in, const std::string& base_dir) {
    Settings out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        auto key = trim_copy(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        auto value = trim_copy(line.substr(eq + 1));
        if (key == "dataset" && !base_dir.empty()) {
            std::string resolved;
            for (const auto& p : split_on(value, '|')) {
                std::filesystem::path path(p);
                if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
                resolved += (resolved.empty() ? "" : "|") + path.lexically_normal().string();
            }
            value = resolved;
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

Settings read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_settings(in, std::filesystem::path(path).parent_path().string());
}

ExperimentConfig config_from_settings(const Settings& settings) {
    ExperimentConfig config;
    std::map<std::string, std::vector<std::string>> per_dataset;
    for (const auto& [key, value] : settings) {
        if (kDatasetKeys.count(key)) {
            per_dataset[key].push_back(value);
            continue;
        }
        if (!kScalarKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
        if (key == "mode") config.mode = parse_mode(value);
        else if (key == "seed") config.base_seed = parse_unsigned<std::uint64_t>(key, value);
        else if (key == "repeats") config.repeats = parse_unsigned<std::size_t>(key, value);
        else if (key == "knn_k") config.knn_k = parse_unsigned<std::size_t>(key, value);
        else if (key == "train_fraction") config.train_fraction = parse_real(key, value);
        else if (key == "stratified") config.stratified = parse_bool(key, value);
        else if (key == "fd_override") {
            if (value == "none" || value.empty()) config.fd_override.reset();
            else config.fd_override = parse_unsigned<std::size_t>(key, value);
        }
        else if (key == "population_size") config.lfwa.population_size = parse_unsigned<std::size_t>(key, value);
        else if (key == "gaussian_sparks") config.lfwa.gaussian_spark_count = parse_unsigned<std::size_t>(key, value);
        else if (key == "max_evaluations") config.lfwa.max_evaluations = parse_unsigned<std::size_t>(key, value);
        else if (key == "total_spark_cap") config.lfwa.total_spark_cap = parse_unsigned<std::size_t>(key, value);
        else if (key == "xi") config.lfwa.xi = parse_real(key, value);
        else if (key == "per_dimension_beta") config.lfwa.per_dimension_beta = parse_bool(key, value);
        else if (key == "call_limit") config.lfwa.call_limit = parse_unsigned<std::size_t>(key, value);
        else if (key == "budget") config.budget = parse_budget_unit(value);
        else if (key == "record_timing") config.record_timing = parse_bool(key, value);
        // format and out belong to the front end
    }

    const auto& paths = per_dataset["dataset"];
    auto pick = [&](const std::string& key, std::size_t i) -> std::optional<std::string> {
        const auto& values = per_dataset[key];
        if (values.empty()) return std::nullopt;
        if (values.size() == 1) return values.front();
        if (values.size() != paths.size()) {
            throw ConfigError("'" + key + "' given " + std::to_string(values.size()) + " times for " +
                              std::to_string(paths.size()) + " datasets");
        }
        return values[i];
    };
    for (std::size_t i = 0; i < paths.size(); ++i) {
        DatasetSpec spec;
        spec.paths = split_on(paths[i], '|');
        if (auto v = pick("label_column", i)) spec.label_column = LabelColumn::parse(*v);
        if (auto v = pick("header", i)) spec.header = parse_bool("header", *v);
        if (auto v = pick("delimiter", i)) spec.delimiter = parse_delimiter(*v);
        if (auto v = pick("expected_shape", i)) apply_shape(spec, *v);
        if (per_dataset["name"].size() > 1 || (per_dataset["name"].size() == 1 && paths.size() == 1)) {
            spec.name = *pick("name", i);
        } else {
            spec.name = std::filesystem::path(spec.paths.front()).stem().string();
        }
        config.datasets.push_back(std::move(spec));
    }
    return config;
}

// ---------------------------------------------------------------------------
// Experiments
// ---------------------------------------------------------------------------

Aggregate aggregate_trials(const std::vector<TrialRecord>& trials) {
    Aggregate agg;
    std::vector<const TrialRecord*> ok;
    for (const auto& t : trials) {
        if (t.failure) ++agg.failures;
        else ok.push_back(&t);
    }
    agg.trials = ok.size();
    if (ok.empty()) return agg;

    double sum = 0.0;
    double features = 0.0;
    agg.best_accuracy = ok.front()->accuracy;
    for (const auto* t : ok) {
        sum += t->accuracy;
        features += static_cast<double>(t->mask.size());
        agg.best_accuracy = std::max(agg.best_accuracy, t->accuracy);
    }
    const double n = static_cast<double>(ok.size());
    agg.mean_accuracy = sum / n;
    agg.mean_features = features / n;
    if (ok.size() > 1) {
        double ss = 0.0;
        for (const auto* t : ok) ss += (t->accuracy - agg.mean_accuracy) * (t->accuracy - agg.mean_accuracy);
        agg.std_accuracy = std::sqrt(ss / (n - 1.0));
    }

    // most frequent mask; ties go to the one seen first
    std::map<std::vector<std::size_t>, std::pair<std::size_t, std::size_t>> counts;
    for (std::size_t i = 0; i < ok.size(); ++i) {
        auto [it, inserted] = counts.try_emplace(ok[i]->mask, 0, i);
        ++it->second.first;
    }
    std::size_t first_seen = 0;
    for (const auto& [mask, c] : counts) {
        if (c.first > agg.modal_count || (c.first == agg.modal_count && c.second < first_seen)) {
            agg.modal_mask = mask;
            agg.modal_count = c.first;
            first_seen = c.second;
        }
    }
    return agg;
}

namespace {

ClassifierConfig classifier_for(const ExperimentConfig& config, std::uint64_t seed) {
    ClassifierConfig c;
    c.k = config.knn_k;
    c.split = SplitSpec{config.train_fraction, config.stratified, seed};
    return c;
}

std::vector<std::size_t> random_mask(std::size_t d, std::size_t k, std::uint64_t seed) {
    // offset keeps this stream distinct from the split shuffle that uses the same seed
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), std::size_t{1});
    for (std::size_t j = 0; j < k; ++j) std::swap(idx[j], idx[j + rng.index(d - j)]);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

TrialRecord run_trial(const ExperimentConfig& config, const Dataset& data, const RunReport& report,
                      std::uint64_t seed) {
    TrialRecord trial;
    trial.seed = seed;
    const auto classifier = classifier_for(config, seed);
    switch (config.mode) {
        case Mode::lfwa_fd:
        case Mode::lfwa_unconstrained_m2: {
            LfwaConfig lfwa = config.lfwa;
            lfwa.rng_seed = seed;
            SelectionOptions opts;
            opts.budget = config.budget;
            if (config.mode == Mode::lfwa_fd) {
                opts.mode = ConstraintMode::fd;
                opts.fd_override = report.cardinality;
            } else {
                opts.mode = ConstraintMode::unconstrained;
            }
            const auto outcome = select_features(data, lfwa, classifier, opts);
            trial.mask = outcome.mask.selected_indices();
            trial.accuracy = outcome.accuracy;
            trial.evaluations = outcome.evaluations;
            trial.history = outcome.trace;
            break;
        }
        case Mode::full_features_m1:
        case Mode::random_subset_baseline: {
            const auto split = normalized_split(data, classifier.split);
            FeatureMask mask;
            if (config.mode == Mode::full_features_m1) {
                mask = FeatureMask(Bits(data.dims(), 1));
            } else {
                const auto idx = random_mask(data.dims(), report.cardinality, seed);
                mask = FeatureMask::from_indices(data.dims(), idx);
            }
            trial.mask = mask.selected_indices();
            trial.accuracy = -subset_fitness(mask, split.train, split.test, classifier);
            trial.evaluations = 1;
            break;
        }
        case Mode::fd_reduction: break;
    }
    return trial;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config, const Dataset& data) {
    config.validate(false);
    RunReport report;
    report.mode = config.mode;
    report.dataset = data.name;
    report.rows = data.rows();
    report.dims = data.dims();
    report.classes = data.class_count;

    const bool needs_cardinality = config.mode == Mode::fd_reduction || config.mode == Mode::lfwa_fd ||
                                   config.mode == Mode::random_subset_baseline;
    if (needs_cardinality) {
        if (config.fd_override && config.mode != Mode::fd_reduction) {
            report.cardinality = *config.fd_override;
        } else {
            report.fd = estimate_dataset_fd(data);
            report.cardinality = static_cast<std::size_t>(std::max(report.fd->cardinality, 1));
        }
        if (report.cardinality > data.dims()) {
            throw ConfigError("cardinality " + std::to_string(report.cardinality) + " exceeds the " +
                              std::to_string(data.dims()) + " available features");
        }
        report.reduction_rate = reduction_rate(data.dims(), report.cardinality);
    }

    if (config.mode != Mode::fd_reduction) {
        for (std::size_t r = 0; r < config.repeats; ++r) {
            const std::uint64_t seed = config.base_seed + r;
            const auto start = std::chrono::steady_clock::now();
            TrialRecord trial;
            try {
                trial = run_trial(config, data, report, seed);
            } catch (const std::exception& e) {
                trial = TrialRecord{};
                trial.seed = seed;
                trial.failure = e.what();
            }
            trial.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            report.trials.push_back(std::move(trial));
        }
    }
    report.aggregate = aggregate_trials(report.trials);
    return report;
}

std::vector<RunReport> run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<RunReport> out;
    for (const auto& spec : config.datasets) out.push_back(run_experiment(config, load_dataset(spec)));
    return out;
}

double Comparison::delta(Mode mode) const {
    return report(reference).aggregate.mean_accuracy - report(mode).aggregate.mean_accuracy;
}

const RunReport& Comparison::report(Mode mode) const {
    for (const auto& r : reports) {
        if (r.mode == mode) return r;
    }
    throw InputError("comparison on '" + dataset + "' has no " + to_string(mode) + " report");
}

Comparison run_ablation(const ExperimentConfig& config, const Dataset& data, const std::vector<Mode>& modes) {
    Comparison cmp;
    cmp.dataset = data.name;
    cmp.reference = Mode::lfwa_fd;
    auto run_mode = [&](Mode m) {
        ExperimentConfig c = config;
        c.mode = m;
        cmp.reports.push_back(run_experiment(c, data));
    };
    for (Mode m : modes) {
        if (m != Mode::lfwa_fd && m != Mode::fd_reduction) run_mode(m);
    }
    run_mode(Mode::lfwa_fd);
    return cmp;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string render() const {
        std::vector<std::size_t> width(header_.size(), 0);
        auto measure = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
        };
        measure(header_);
        for (const auto& r : rows_) measure(r);
        std::string out;
        auto line = [&](const std::vector<std::string>& row) {
            std::string l;
            for (std::size_t i = 0; i < row.size(); ++i) {
                l += row[i];
                if (i + 1 < row.size()) l += std::string(width[i] - row[i].size() + 2, ' ');
            }
            out += l + "\n";
        };
        line(header_);
        std::size_t total = 0;
        for (auto w : width) total += w + 2;
        out += std::string(total - 2, '-') + "\n";
        for (const auto& r : rows_) line(r);
        return out;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string signed_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%+.2f", v);
    return buf;
}

std::string mask_text(const std::vector<std::size_t>& mask, std::size_t dims) {
    if (!mask.empty() && mask.size() == dims && dims > 6) return "{1, 2, 3, ..., " + std::to_string(dims) + "}";
    std::string s = "{";
    for (std::size_t i = 0; i < mask.size(); ++i) s += (i ? ", " : "") + std::to_string(mask[i]);
    return s + "}";
}

std::string dataset_label(const std::string& name) {
    if (auto b = published::identify(name)) return std::string(published::display_name(*b));
    return name;
}

std::string reduction_table(const std::vector<RunReport>& reports) {
    TextTable t({"Dataset", "FD", "ceil(FD)", "RR (%)", "Window r", "R^2", "Scales"});
    for (const auto& r : reports) {
        if (!r.fd) continue;
        const auto& fd = *r.fd;
        std::string window = fixed(fd.r_low, 4) + ".." + fixed(fd.r_high, 4);
        std::string scales = std::to_string(fd.scales_used);
        if (fd.short_range) scales += " (short)";
        if (fd.degenerate) scales += " (degenerate)";
        t.add({dataset_label(r.dataset), fixed(fd.fd, 4), std::to_string(fd.cardinality),
               r.reduction_rate ? fixed(*r.reduction_rate) : "-", window, fixed(fd.r_squared, 4), scales});
    }
    return t.render();
}

std::vector<std::string> summary_row(const RunReport& r, const std::string& delta) {
    const auto& a = r.aggregate;
    return {dataset_label(r.dataset),  method_label(r.mode),        mask_text(a.modal_mask, r.dims),
            fixed(a.mean_features, 1), fixed(a.mean_accuracy),      fixed(a.std_accuracy),
            fixed(a.best_accuracy),    delta,                        std::to_string(a.trials) +
                                                                         (a.failures ? " (" + std::to_string(a.failures) + " failed)" : "")};
}

const std::vector<std::string> kAccuracyHeader{"Dataset", "Method",   "Feature subset", "Features", "Acc (%)",
                                               "Std",     "Best (%)", "dAcc (%)",       "Trials"};

std::string accuracy_table(const std::vector<RunReport>& reports, const EmitOptions& options) {
    TextTable t(kAccuracyHeader);
    for (const auto& r : reports) {
        if (r.mode == Mode::fd_reduction || r.trials.empty()) continue;
        t.add(summary_row(r, "--"));
        const auto bench = published::identify(r.dataset);
        if (!options.published_reference || r.mode != Mode::lfwa_fd || !bench || r.aggregate.trials == 0) continue;
        for (const auto& p : published::comparison_rows()) {
            if (p.dataset != *bench) continue;
            t.add({"", std::string(p.method) + " (published)", std::string(p.subset), "-", fixed(p.accuracy), "-", "-",
                   signed_fixed(r.aggregate.mean_accuracy - p.accuracy), "-"});
        }
    }
    return t.render();
}

std::string comparison_table(const std::vector<Comparison>& comparisons, const EmitOptions& options) {
    auto header = kAccuracyHeader;
    if (options.published_reference) header.insert(header.begin() + 5, "Published (%)");
    TextTable t(header);
    for (const auto& c : comparisons) {
        const auto bench = published::identify(c.dataset);
        std::vector<const RunReport*> ordered;
        for (const auto& r : c.reports) {
            if (r.mode != c.reference) ordered.push_back(&r);
        }
        ordered.push_back(&c.report(c.reference));
        for (const auto* r : ordered) {
            auto row = summary_row(*r, r->mode == c.reference ? "--" : signed_fixed(c.delta(r->mode)));
            if (options.published_reference) {
                std::string pub = "-";
                if (bench) {
                    if (auto p = published::find(published::ablation_rows(), *bench, method_label(r->mode))) {
                        pub = fixed(p->accuracy);
                    }
                }
                row.insert(row.begin() + 5, pub);
            }
            t.add(std::move(row));
        }
    }
    return t.render();
}

json fd_json(const std::optional<FDEstimate>& fd) {
    if (!fd) return nullptr;
    return json{{"fd", fd->fd},
                {"r_low", fd->r_low},
                {"r_high", fd->r_high},
                {"r_squared", fd->r_squared},
                {"cardinality", fd->cardinality},
                {"degenerate", fd->degenerate},
                {"short_range", fd->short_range},
                {"scales_used", fd->scales_used}};
}

std::optional<FDEstimate> fd_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    FDEstimate fd;
    fd.fd = j.at("fd").get<double>();
    fd.r_low = j.at("r_low").get<double>();
    fd.r_high = j.at("r_high").get<double>();
    fd.r_squared = j.at("r_squared").get<double>();
    fd.cardinality = j.at("cardinality").get<int>();
    fd.degenerate = j.at("degenerate").get<bool>();
    fd.short_range = j.at("short_range").get<bool>();
    fd.scales_used = j.at("scales_used").get<std::size_t>();
    return fd;
}

void emit_records_for(std::string& out, const RunReport& r, const EmitOptions& options) {
    const auto mode = to_string(r.mode);
    json run{{"record", "run"},
             {"mode", mode},
             {"dataset", r.dataset},
             {"rows", r.rows},
             {"dims", r.dims},
             {"classes", r.classes},
             {"cardinality", r.cardinality},
             {"reduction_rate", r.reduction_rate ? json(*r.reduction_rate) : json(nullptr)},
             {"fd", fd_json(r.fd)},
             {"trials", r.trials.size()}};
    out += run.dump() + "\n";
    for (const auto& t : r.trials) {
        json j{{"record", "trial"}, {"mode", mode},        {"dataset", r.dataset},
               {"seed", t.seed},    {"mask", t.mask},      {"accuracy", t.accuracy},
               {"evaluations", t.evaluations}};
        if (options.include_timing) j["wall_ms"] = t.wall_ms;
        if (t.failure) j["failure"] = *t.failure;
        if (options.include_history) {
            json h = json::array();
            for (const auto& g : t.history) h.push_back(json::array({g.generation, g.evaluations, g.best_fitness, g.spark_counts}));
            j["history"] = std::move(h);
        }
        out += j.dump() + "\n";
    }
    const auto& a = r.aggregate;
    json agg{{"record", "aggregate"},
             {"mode", mode},
             {"dataset", r.dataset},
             {"trials", a.trials},
             {"failures", a.failures},
             {"mean_accuracy", a.mean_accuracy},
             {"std_accuracy", a.std_accuracy},
             {"best_accuracy", a.best_accuracy},
             {"modal_mask", a.modal_mask},
             {"modal_count", a.modal_count},
             {"mean_features", a.mean_features}};
    out += agg.dump() + "\n";
}

}  // namespace

std::string emit_report(const std::vector<RunReport>& reports, ReportFormat format, const EmitOptions& options) {
    if (format == ReportFormat::table) {
        const bool reduction = !reports.empty() && std::all_of(reports.begin(), reports.end(), [](const RunReport& r) {
            return r.mode == Mode::fd_reduction;
        });
        return reduction ? reduction_table(reports) : accuracy_table(reports, options);
    }
    std::string out;
    for (const auto& r : reports) emit_records_for(out, r, options);
    return out;
}

std::string emit_comparison(const std::vector<Comparison>& comparisons, ReportFormat format,
                            const EmitOptions& options) {
    if (format == ReportFormat::table) return comparison_table(comparisons, options);
    std::string out;
    for (const auto& c : comparisons) {
        json head{{"record", "comparison"},
                  {"dataset", c.dataset},
                  {"reference", to_string(c.reference)},
                  {"reports", c.reports.size()}};
        out += head.dump() + "\n";
        for (const auto& r : c.reports) emit_records_for(out, r, options);
        for (const auto& r : c.reports) {
            if (r.mode == c.reference) continue;
            json d{{"record", "delta"},
                   {"dataset", c.dataset},
                   {"method", to_string(r.mode)},
                   {"reference", to_string(c.reference)},
                   {"delta_accuracy", c.delta(r.mode)}};
            out += d.dump() + "\n";
        }
    }
    return out;
}

ParsedRecords parse_records(std::istream& in) {
    ParsedRecords parsed;
    std::size_t pending_in_comparison = 0;
    RunReport* current = nullptr;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw InputError("records line " + std::to_string(line_no) + ": " + e.what());
        }
        const auto kind = j.at("record").get<std::string>();
        if (kind == "comparison") {
            Comparison c;
            c.dataset = j.at("dataset").get<std::string>();
            c.reference = parse_mode(j.at("reference").get<std::string>());
            pending_in_comparison = j.at("reports").get<std::size_t>();
            parsed.comparisons.push_back(std::move(c));
        } else if (kind == "run") {
            RunReport r;
            r.mode = parse_mode(j.at("mode").get<std::string>());
            r.dataset = j.at("dataset").get<std::string>();
            r.rows = j.at("rows").get<std::size_t>();
            r.dims = j.at("dims").get<std::size_t>();
            r.classes = j.at("classes").get<int>();
            r.cardinality = j.at("cardinality").get<std::size_t>();
            if (!j.at("reduction_rate").is_null()) r.reduction_rate = j.at("reduction_rate").get<double>();
            r.fd = fd_from_json(j.at("fd"));
            auto& target = pending_in_comparison > 0 ? parsed.comparisons.back().reports : parsed.reports;
            if (pending_in_comparison > 0) --pending_in_comparison;
            target.push_back(std::move(r));
            current = &target.back();
        } else if (kind == "trial") {
            if (!current) throw InputError("records line " + std::to_string(line_no) + ": trial before run");
            TrialRecord t;
            t.seed = j.at("seed").get<std::uint64_t>();
            t.mask = j.at("mask").get<std::vector<std::size_t>>();
            t.accuracy = j.at("accuracy").get<double>();
            t.evaluations = j.at("evaluations").get<std::size_t>();
            if (j.contains("wall_ms")) t.wall_ms = j.at("wall_ms").get<double>();
            if (j.contains("failure")) t.failure = j.at("failure").get<std::string>();
            if (j.contains("history")) {
                for (const auto& g : j.at("history")) {
                    GenerationStats s;
                    s.generation = g.at(0).get<std::size_t>();
                    s.evaluations = g.at(1).get<std::size_t>();
                    s.best_fitness = g.at(2).get<double>();
                    s.spark_counts = g.at(3).get<std::vector<int>>();
                    t.history.push_back(std::move(s));
                }
            }
            current->trials.push_back(std::move(t));
        } else if (kind == "aggregate") {
            if (!current) throw InputError("records line " + std::to_string(line_no) + ": aggregate before run");
            auto& a = current->aggregate;
            a.trials = j.at("trials").get<std::size_t>();
            a.failures = j.at("failures").get<std::size_t>();
            a.mean_accuracy = j.at("mean_accuracy").get<double>();
            a.std_accuracy = j.at("std_accuracy").get<double>();
            a.best_accuracy = j.at("best_accuracy").get<double>();
            a.modal_mask = j.at("modal_mask").get<std::vector<std::size_t>>();
            a.modal_count = j.at("modal_count").get<std::size_t>();
            a.mean_features = j.at("mean_features").get<double>();
        } else if (kind == "delta") {
            // derived from the reports; nothing to store
        } else {
            throw InputError("records line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
        }
    }
    return parsed;
}

}  // namespace lfwa
