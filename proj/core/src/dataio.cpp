#include "lfwa/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "lfwa/errors.hpp"

namespace lfwa {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line, std::optional<char> delimiter) {
    std::vector<std::string_view> out;
    if (delimiter) {
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(*delimiter, start);
            out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
            if (pos == std::string_view::npos) break;
            start = pos + 1;
        }
        return out;
    }
    // commas and runs of whitespace both separate fields
    std::size_t i = 0;
    const auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !is_sep(line[j])) ++j;
        out.push_back(line.substr(i, j - i));
        while (j < line.size() && (line[j] == ' ' || line[j] == '\t' || line[j] == '\r')) ++j;
        if (j < line.size() && line[j] == ',') ++j;
        i = j;
    }
    return out;
}

bool skippable(std::string_view line) {
    const auto t = trim(line);
    return t.empty() || t.front() == '#' || t.front() == '%' || t.front() == '@';
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::string location(const std::string& source, std::size_t line, std::size_t column = 0) {
    std::string out = source + ":" + std::to_string(line);
    if (column) out += ", column " + std::to_string(column);
    return out;
}

}  // namespace

LabelColumn LabelColumn::parse(const std::string& text) {
    if (text == "first") return first();
    if (text == "last") return last();
    if (text.empty()) throw ConfigError("empty label column");
    return named(text);
}

Dataset parse_dataset(std::istream& in, const DatasetSpec& spec, const std::string& source) {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    std::optional<std::size_t> width;
    std::optional<std::size_t> label_index;

    std::string line;
    std::size_t line_no = 0;
    bool header_pending = spec.header;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto fields = split(line, spec.delimiter);
        if (header_pending) {
            for (auto f : fields) header.emplace_back(f);
            width = header.size();
            header_pending = false;
            continue;
        }
        if (!width) width = fields.size();
        if (fields.size() != *width) {
            throw DataError(location(source, line_no) + ": ragged row with " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(*width));
        }
        if (*width < 2) throw DataError(location(source, line_no) + ": need at least one feature and a label");
        if (!label_index) {
            switch (spec.label_column.kind) {
                case LabelColumn::Kind::first: label_index = 0; break;
                case LabelColumn::Kind::last: label_index = *width - 1; break;
                case LabelColumn::Kind::named: {
                    const auto it = std::find(header.begin(), header.end(), spec.label_column.name);
                    if (it == header.end()) {
                        throw DataError(source + ": unknown label column '" + spec.label_column.name + "'");
                    }
                    label_index = static_cast<std::size_t>(it - header.begin());
                    break;
                }
            }
        }
        std::vector<double> values;
        values.reserve(*width - 1);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == *label_index) continue;
            const auto v = parse_number(fields[c]);
            if (!v || !std::isfinite(*v)) {
                throw DataError(location(source, line_no, c + 1) + ": non-numeric feature value '" +
                                std::string(fields[c]) + "'");
            }
            values.push_back(*v);
        }
        rows.push_back(std::move(values));
        raw_labels.emplace_back(fields[*label_index]);
    }
    if (spec.label_column.kind == LabelColumn::Kind::named && !label_index && !rows.empty()) {
        throw DataError(source + ": unknown label column '" + spec.label_column.name + "'");
    }

    Dataset data;
    data.name = spec.name;
    if (rows.empty()) {
        data.column_names = header;
        return data;
    }
    for (const auto& r : rows) data.features.append_row(r);

    if (!header.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c != *label_index) data.column_names.push_back(header[c]);
        }
    } else {
        for (std::size_t c = 0; c < data.dims(); ++c) data.column_names.push_back("f" + std::to_string(c + 1));
    }

    std::map<std::string, int> ids;
    for (const auto& l : raw_labels) ids.emplace(l, 0);
    for (auto& [label, id] : ids) {
        id = static_cast<int>(data.class_names.size());
        data.class_names.push_back(label);
    }
    data.class_count = static_cast<int>(ids.size());
    data.labels.reserve(raw_labels.size());
    for (const auto& l : raw_labels) data.labels.push_back(ids.at(l));
    return data;
}

Dataset load_dataset(const DatasetSpec& spec) {
    if (spec.paths.empty()) throw ConfigError("dataset spec has no path");
    Dataset data;
    for (const auto& path : spec.paths) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot open dataset file '" + path + "'");
        auto part = parse_dataset(in, spec, path);
        if (part.rows() == 0) continue;
        if (data.rows() == 0) {
            data = std::move(part);
            continue;
        }
        if (part.dims() != data.dims()) {
            throw DataError("'" + path + "' has " + std::to_string(part.dims()) + " features, expected " +
                            std::to_string(data.dims()));
        }
        // remap both parts onto the merged, lexicographically ordered label set
        std::map<std::string, int> merged;
        for (const auto& n : data.class_names) merged.emplace(n, 0);
        for (const auto& n : part.class_names) merged.emplace(n, 0);
        std::vector<std::string> names;
        for (auto& [n, id] : merged) {
            id = static_cast<int>(names.size());
            names.push_back(n);
        }
        for (auto& l : data.labels) l = merged.at(data.class_names[l]);
        for (std::size_t r = 0; r < part.rows(); ++r) {
            data.features.append_row(part.features.row(r));
            data.labels.push_back(merged.at(part.class_names[part.labels[r]]));
        }
        data.class_names = std::move(names);
        data.class_count = static_cast<int>(data.class_names.size());
    }
    data.name = spec.name;
    if (data.rows() == 0) throw DataError("empty dataset: no data rows in '" + spec.paths.front() + "'");
    data.validate();

    if (spec.expected_rows && data.rows() != *spec.expected_rows) {
        throw DataError("dataset '" + spec.name + "' has " + std::to_string(data.rows()) + " rows, expected " +
                        std::to_string(*spec.expected_rows));
    }
    if (spec.expected_dims && data.dims() != *spec.expected_dims) {
        throw DataError("dataset '" + spec.name + "' has " + std::to_string(data.dims()) + " features, expected " +
                        std::to_string(*spec.expected_dims));
    }
    if (spec.expected_classes && data.class_count != *spec.expected_classes) {
        throw DataError("dataset '" + spec.name + "' has " + std::to_string(data.class_count) +
                        " classes, expected " + std::to_string(*spec.expected_classes));
    }
    return data;
}

void write_dataset(std::ostream& out, const Dataset& data) {
    for (const auto& c : data.column_names) out << c << ',';
    out << "label\n";
    char buf[32];
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (double v : data.features.row(r)) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << ',';
        }
        out << data.class_names.at(static_cast<std::size_t>(data.labels[r])) << '\n';
    }
}

MinMaxParams fit_min_max(const Matrix& features) {
    MinMaxParams p;
    const std::size_t d = features.cols();
    p.min.assign(d, 0.0);
    p.max.assign(d, 0.0);
    p.constant.assign(d, true);
    for (std::size_t c = 0; c < d; ++c) {
        if (features.rows() == 0) break;
        double lo = features(0, c);
        double hi = lo;
        for (std::size_t r = 1; r < features.rows(); ++r) {
            lo = std::min(lo, features(r, c));
            hi = std::max(hi, features(r, c));
        }
        p.min[c] = lo;
        p.max[c] = hi;
        p.constant[c] = !(hi > lo);
    }
    return p;
}

Matrix MinMaxParams::apply(const Matrix& features) const {
    if (features.cols() != min.size()) throw InputError("normalization fitted on a different column count");
    Matrix out(features.rows(), features.cols());
    for (std::size_t r = 0; r < features.rows(); ++r) {
        for (std::size_t c = 0; c < features.cols(); ++c) {
            out(r, c) = constant[c] ? 0.0 : (features(r, c) - min[c]) / (max[c] - min[c]);
        }
    }
    return out;
}

Dataset MinMaxParams::apply(const Dataset& data) const {
    Dataset out = data;
    out.features = apply(data.features);
    return out;
}

Normalized min_max_normalize(const Dataset& data) {
    auto params = fit_min_max(data.features);
    auto normalized = params.apply(data);
    return {std::move(normalized), std::move(params)};
}

}  // namespace lfwa
