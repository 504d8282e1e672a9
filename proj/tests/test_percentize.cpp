#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "pscale/percentize.hpp"

using namespace pscale;

namespace {

Dataset one_numeric_column(const std::string& name, std::vector<double> values) {
    Dataset data;
    data.n_rows = values.size();
    data.source_id = "test";
    data.columns.push_back({name, std::move(values)});
    return data;
}

}  // namespace

TEST_CASE("percent-scale conversion") {
    CHECK(to_percent_scale(7.5, 0.0, 10.0) == doctest::Approx(75.0).epsilon(1e-14));
    CHECK(to_percent_scale(0.0, 0.0, 10.0) == 0.0);
    CHECK(to_percent_scale(10.0, 0.0, 10.0) == 100.0);
    CHECK(to_percent_scale(4.0, 1.0, 7.0) == doctest::Approx(50.0).epsilon(1e-14));
    CHECK_THROWS_AS(to_percent_scale(1.0, 5.0, 5.0), DegenerateAnchor);
}

TEST_CASE("min-max normalization hits the documented special cases") {
    // Midpoint onto a symmetric target.
    CHECK(min_max_normalize(2.0, 1.0, 3.0, -1.0, 1.0) == 0.0);
    // Source 0-100 onto 0-1.
    CHECK(std::fabs(min_max_normalize(18.0, 0.0, 100.0, 0.0, 1.0) - 0.18) < 1e-12);
    CHECK_THROWS_AS(min_max_normalize(1.0, 0.0, 1.0, 2.0, 2.0), DegenerateAnchor);
}

TEST_CASE("min-max with target 0-100 is the percent-scale conversion") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int trial = 0; trial < 500; ++trial) {
        double lo = u(rng);
        double hi = lo + std::uniform_real_distribution<double>(0.1, 100.0)(rng);
        double v = std::uniform_real_distribution<double>(lo, hi)(rng);
        double a = min_max_normalize(v, lo, hi, 0.0, 100.0);
        double b = to_percent_scale(v, lo, hi);
        CHECK(std::fabs(a - b) < 1e-12);
    }
}

TEST_CASE("anchored percentization") {
    CHECK(std::fabs(percentize_value(83.0, ScaleAnchor::unit(0.0, 100.0)) - 0.83) < 1e-12);
    CHECK(percentize_value(1.0, ScaleAnchor::unit(1.0, 9.0)) == 0.0);
    CHECK(percentize_value(5.0, ScaleAnchor::unit(1.0, 9.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(percentize_value(1.0, ScaleAnchor::unit(3.0, 3.0)), DegenerateAnchor);
}

TEST_CASE("anchor endpoints map to target endpoints exactly") {
    const ScaleAnchor anchors[] = {
        ScaleAnchor::unit(-7.25, 13.5),
        ScaleAnchor::percent(1.0, 9.0),
        ScaleAnchor::bipolar(0.0, 360.0),
        {2.0, 11.0, 0.25, 0.75, Provenance::declared},
    };
    for (const auto& anchor : anchors) {
        CHECK(percentize_value(anchor.conceptual_min, anchor) == anchor.target_min);
        CHECK(percentize_value(anchor.conceptual_max, anchor) == anchor.target_max);
    }
}

TEST_CASE("percentization is monotone and invertible") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        double c_min = std::uniform_real_distribution<double>(-100.0, 100.0)(rng);
        double width = std::uniform_real_distribution<double>(0.5, 200.0)(rng);
        ScaleAnchor anchor = ScaleAnchor::unit(c_min, c_min + width);

        double v1 = std::uniform_real_distribution<double>(c_min, c_min + width)(rng);
        double v2 = v1 + std::uniform_real_distribution<double>(0.01, 1.0)(rng) * width;
        CHECK(percentize_value(v1, anchor) < percentize_value(v2, anchor));

        double round_trip = raw_from_percent(percentize_value(v1, anchor), anchor);
        CHECK(std::fabs(round_trip - v1) <=
              1e-12 * std::max(1.0, std::fabs(v1)));
    }
}

TEST_CASE("out-of-anchor values are transformed, not clamped") {
    ScaleAnchor anchor = ScaleAnchor::unit(0.0, 100.0);
    CHECK(percentize_value(101.0, anchor) > 1.0);
    CHECK(percentize_value(-2.0, anchor) < 0.0);
}

TEST_CASE("percent formatting") {
    CHECK(format_percent(0.87) == "87.0%");
    CHECK(format_percent(0.87, 0) == "87%");
    CHECK(format_percent(0.0) == "0.0%");
    CHECK(format_percent(1.0) == "100.0%");
    CHECK(format_percent(-0.25) == "-25.0%");
    CHECK(format_percent(-0.0) == "0.0%");
}

TEST_CASE("percentize_dataset with an identity anchor is a no-op") {
    Dataset data = one_numeric_column("share", {0.0, 0.25, 1.0});
    VariableSpec spec;
    spec.name = "share";
    spec.anchor = ScaleAnchor::unit(0.0, 1.0);

    auto percentized = percentize_dataset(data, std::vector<VariableSpec>{spec});
    REQUIRE(percentized.columns.size() == 1);
    CHECK(percentized.columns[0].values == std::vector<double>{0.0, 0.25, 1.0});
    REQUIRE(percentized.transform_log.size() == 1);
    CHECK(percentized.transform_log[0].kind == TransformKind::conceptual);
}

TEST_CASE("percentize_dataset maps the age example") {
    Dataset data = one_numeric_column("age", {18.0, 50.0, 83.0});
    VariableSpec spec;
    spec.name = "age";
    spec.anchor = ScaleAnchor::unit(0.0, 100.0);

    auto percentized = percentize_dataset(data, std::vector<VariableSpec>{spec});
    const auto& values = percentized.columns[0].values;
    CHECK(std::fabs(values[0] - 0.18) < 1e-12);
    CHECK(std::fabs(values[1] - 0.50) < 1e-12);
    CHECK(std::fabs(values[2] - 0.83) < 1e-12);
}

TEST_CASE("nominal columns expand into reference-omitted dummies") {
    Dataset data;
    data.n_rows = 4;
    data.source_id = "test";
    data.columns.push_back({"city", std::vector<std::string>{"urban", "rural", "", "suburban"}});

    VariableSpec spec;
    spec.name = "city";
    spec.kind = Kind::nominal;
    spec.categories = {"urban", "suburban", "rural"};
    spec.reference_category = "urban";

    auto percentized = percentize_dataset(data, std::vector<VariableSpec>{spec});
    REQUIRE(percentized.columns.size() == 2);
    CHECK(percentized.columns[0].name == "city=suburban");
    CHECK(percentized.columns[1].name == "city=rural");

    CHECK(percentized.columns[0].values[0] == 0.0);
    CHECK(percentized.columns[1].values[1] == 1.0);
    CHECK(is_missing(percentized.columns[0].values[2]));
    CHECK(is_missing(percentized.columns[1].values[2]));
    CHECK(percentized.columns[0].values[3] == 1.0);
}

TEST_CASE("percentize_dataset error paths") {
    Dataset data = one_numeric_column("x", {0.0, 0.5});

    VariableSpec unknown;
    unknown.name = "y";
    unknown.anchor = ScaleAnchor::unit(0.0, 1.0);
    CHECK_THROWS_AS(percentize_dataset(data, std::vector<VariableSpec>{unknown}),
                    UnknownColumn);

    VariableSpec no_anchor;
    no_anchor.name = "x";
    CHECK_THROWS_AS(percentize_dataset(data, std::vector<VariableSpec>{no_anchor}),
                    MissingAnchor);

    VariableSpec binary;
    binary.name = "x";
    binary.kind = Kind::binary;
    CHECK_THROWS_AS(percentize_dataset(data, std::vector<VariableSpec>{binary}),
                    UnknownCategory);  // 0.5 is not a 0/1 value

    Dataset labeled;
    labeled.n_rows = 2;
    labeled.columns.push_back({"c", std::vector<std::string>{"a", "x"}});
    VariableSpec nominal;
    nominal.name = "c";
    nominal.kind = Kind::nominal;
    nominal.categories = {"a", "b"};
    nominal.reference_category = "a";
    CHECK_THROWS_AS(percentize_dataset(labeled, std::vector<VariableSpec>{nominal}),
                    UnknownCategory);
}

TEST_CASE("missing values pass through untouched") {
    double nan = std::numeric_limits<double>::quiet_NaN();
    Dataset data = one_numeric_column("x", {1.0, nan, 3.0});
    VariableSpec spec;
    spec.name = "x";
    spec.anchor = ScaleAnchor::unit(0.0, 10.0);

    auto percentized = percentize_dataset(data, std::vector<VariableSpec>{spec});
    CHECK_FALSE(is_missing(percentized.columns[0].values[0]));
    CHECK(is_missing(percentized.columns[0].values[1]));
    CHECK_FALSE(is_missing(percentized.columns[0].values[2]));
}

TEST_CASE("a percentized dataset inverts from its recorded anchors") {
    std::mt19937 rng(37);
    Dataset data;
    data.n_rows = 50;
    data.source_id = "roundtrip";
    std::vector<double> raw(50);
    for (auto& v : raw) v = std::uniform_real_distribution<double>(-40.0, 250.0)(rng);
    data.columns.push_back({"x", raw});

    VariableSpec spec;
    spec.name = "x";
    spec.anchor = ScaleAnchor{-50.0, 300.0, 0.0, 100.0, Provenance::declared};

    auto percentized = percentize_dataset(data, std::vector<VariableSpec>{spec});
    const auto& column = percentized.columns[0];
    for (std::size_t i = 0; i < data.n_rows; ++i) {
        double restored = raw_from_percent(column.values[i], column.anchor);
        CHECK(std::fabs(restored - raw[i]) <= 1e-12 * std::max(1.0, std::fabs(raw[i])));
    }
}

TEST_CASE("the three transforms agree where their domains overlap") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        double lo = std::uniform_real_distribution<double>(-20.0, 20.0)(rng);
        double hi = lo + std::uniform_real_distribution<double>(0.2, 50.0)(rng);
        double v = std::uniform_real_distribution<double>(lo, hi)(rng);

        double via_minmax_100 = min_max_normalize(v, lo, hi, 0.0, 100.0);
        double via_percent = to_percent_scale(v, lo, hi);
        CHECK(std::fabs(via_minmax_100 - via_percent) < 1e-12);

        double via_minmax_unit = min_max_normalize(v, lo, hi, 0.0, 1.0);
        double via_anchor = percentize_value(v, ScaleAnchor::unit(lo, hi));
        CHECK(std::fabs(via_minmax_unit - via_anchor) < 1e-12);
    }
}
