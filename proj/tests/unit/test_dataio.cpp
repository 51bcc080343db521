#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lfwa/dataio.hpp"
#include "lfwa/errors.hpp"
#include "test_support.hpp"

using namespace lfwa;

namespace {

Dataset parse(const std::string& text, LabelColumn label = LabelColumn::last(), bool header = false) {
    std::istringstream in(text);
    DatasetSpec spec;
    spec.label_column = std::move(label);
    spec.header = header;
    return parse_dataset(in, spec, "inline");
}

std::string error_of(const std::string& text, LabelColumn label = LabelColumn::last(), bool header = false) {
    try {
        parse(text, std::move(label), header);
    } catch (const DataError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("benchmark files load with their published shapes") {
    const auto seg = test::load_segment();
    CHECK(seg.rows() == 2310);
    CHECK(seg.dims() == 19);
    CHECK(seg.class_count == 7);

    const auto spectf = test::load_spectf();
    CHECK(spectf.rows() == 267);
    CHECK(spectf.dims() == 44);
    CHECK(spectf.class_count == 2);
}

TEST_CASE("expected shape is enforced") {
    DatasetSpec spec;
    spec.paths = {test::data_path("spectf.csv")};
    spec.label_column = LabelColumn::first();
    spec.expected_rows = 267;
    spec.expected_dims = 44;
    spec.expected_classes = 2;
    CHECK_NOTHROW(load_dataset(spec));
    spec.expected_dims = 43;
    CHECK_THROWS_AS(load_dataset(spec), DataError);
}

TEST_CASE("malformed input is rejected with diagnostics") {
    const auto ragged = error_of("1,2,a\n1,2,3,b\n");
    CHECK(ragged.find("inline:2") != std::string::npos);
    CHECK(ragged.find("ragged") != std::string::npos);

    const auto bad_cell = error_of("1,2,a\n1,x,b\n");
    CHECK(bad_cell.find("inline:2, column 2") != std::string::npos);

    CHECK(error_of("# header comment\n1,nan,a\n").find("inline:2, column 2") != std::string::npos);
    CHECK(error_of("x,y,class\n1,2,a\n", LabelColumn::named("label"), true).find("unknown label column") !=
          std::string::npos);

    DatasetSpec missing;
    missing.paths = {test::data_path("missing.csv")};
    CHECK_THROWS_AS(load_dataset(missing), DataError);
}

TEST_CASE("an empty file is rejected") {
    const auto path = std::filesystem::temp_directory_path() / "lfwa_empty.csv";
    std::ofstream(path) << "% comment only\n\n";
    DatasetSpec spec;
    spec.paths = {path.string()};
    try {
        load_dataset(spec);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("empty dataset") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("label columns, delimiters and headers") {
    const auto first = parse("b 1.5 2\na 3 4\n", LabelColumn::first());
    CHECK(first.dims() == 2);
    CHECK(first.labels == std::vector<int>{1, 0});
    CHECK(first.class_names == std::vector<std::string>{"a", "b"});
    CHECK(first.features(0, 0) == 1.5);

    const auto named = parse("x,cls,y\n1,yes,2\n3,no,4\n", LabelColumn::named("cls"), true);
    CHECK(named.column_names == std::vector<std::string>{"x", "y"});
    CHECK(named.features(1, 1) == 4.0);
    CHECK(named.labels == std::vector<int>{1, 0});

    const auto unnamed = parse("1,2,0\n3,4,1\n");
    CHECK(unnamed.column_names == std::vector<std::string>{"f1", "f2"});
}

TEST_CASE("label mapping is stable and lexicographic") {
    const std::string text = "1,z\n2,a\n3,m\n4,a\n";
    const auto a = parse(text);
    const auto b = parse(text);
    CHECK(a.labels == b.labels);
    CHECK(a.labels == std::vector<int>{2, 0, 1, 0});
}

TEST_CASE("multiple files are concatenated") {
    const auto dir = std::filesystem::temp_directory_path() / "lfwa_dataio_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "a.csv") << "1,2,x\n3,4,y\n";
        std::ofstream(dir / "b.csv") << "5,6,w\n";
    }
    DatasetSpec spec;
    spec.paths = {(dir / "a.csv").string(), (dir / "b.csv").string()};
    const auto d = load_dataset(spec);
    CHECK(d.rows() == 3);
    CHECK(d.class_names == std::vector<std::string>{"w", "x", "y"});
    CHECK(d.labels == std::vector<int>{1, 2, 0});
    std::filesystem::remove_all(dir);
}

TEST_CASE("write then load reproduces the dataset") {
    const auto original = test::load_spectf();
    std::stringstream buf;
    write_dataset(buf, original);
    DatasetSpec spec;
    spec.header = true;
    spec.name = original.name;
    const auto again = parse_dataset(buf, spec);
    CHECK(again.features == original.features);
    CHECK(again.labels == original.labels);
    CHECK(again.class_names == original.class_names);
    CHECK(again.column_names == original.column_names);
}

TEST_CASE("min-max normalization") {
    Matrix x(3, 2);
    x(0, 0) = 2;
    x(1, 0) = 4;
    x(2, 0) = 6;
    for (std::size_t i = 0; i < 3; ++i) x(i, 1) = 7;
    const auto n = min_max_normalize(test::make_dataset(x, {0, 1, 0}));
    CHECK(n.data.features(0, 0) == 0.0);
    CHECK(n.data.features(1, 0) == 0.5);
    CHECK(n.data.features(2, 0) == 1.0);
    for (std::size_t i = 0; i < 3; ++i) CHECK(n.data.features(i, 1) == 0.0);
    CHECK(n.params.constant == std::vector<bool>{false, true});

    Matrix outside(1, 2);
    outside(0, 0) = 8;
    outside(0, 1) = 9;
    const auto mapped = n.params.apply(outside);
    CHECK(mapped(0, 0) == 1.5);
    CHECK(mapped(0, 1) == 0.0);
}

TEST_CASE("fitted normalization spans [0, 1] on every non-constant column") {
    const auto n = min_max_normalize(test::load_segment());
    for (std::size_t j = 0; j < n.data.dims(); ++j) {
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < n.data.rows(); ++i) {
            lo = std::min(lo, n.data.features(i, j));
            hi = std::max(hi, n.data.features(i, j));
        }
        CHECK(lo == 0.0);
        CHECK(hi == (n.params.constant[j] ? 0.0 : 1.0));
    }
}
