#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "pscale/compare.hpp"
#include "pscale/percentize.hpp"

using namespace pscale;

namespace {

BpRegressionResult fake_result(const std::string& dv,
                               std::vector<std::pair<std::string, double>> coefficients) {
    BpRegressionResult result;
    result.dv_name = dv;
    result.names.push_back("intercept");
    result.coefficients.push_back(0.05);
    result.standard_errors.push_back(0.01);
    for (auto& [name, value] : coefficients) {
        result.names.push_back(name);
        result.coefficients.push_back(value);
        result.standard_errors.push_back(0.02);
    }
    return result;
}

PercentizedColumn column(const std::string& name, std::vector<double> values) {
    PercentizedColumn c;
    c.name = name;
    c.values = std::move(values);
    c.anchor = ScaleAnchor::unit(0.0, 1.0);
    return c;
}

Dataset numeric_dataset(const std::string& source,
                        std::vector<std::pair<std::string, std::vector<double>>> columns) {
    Dataset data;
    data.source_id = source;
    data.n_rows = columns.empty() ? 0 : columns.front().second.size();
    for (auto& [name, values] : columns) {
        data.columns.push_back({name, std::move(values)});
    }
    return data;
}

VariableSpec numeric_spec(const std::string& name, double lo, double hi,
                          Role role = Role::independent) {
    VariableSpec spec;
    spec.name = name;
    spec.role = role;
    spec.anchor = ScaleAnchor::unit(lo, hi);
    return spec;
}

}  // namespace

TEST_CASE("relative importance ranks by |b_p|") {
    auto result = fake_result("y", {{"x1", 0.4}, {"x2", -0.6}});
    auto report = relative_importance(result);
    REQUIRE(report.entries.size() == 2);
    CHECK(report.entries[0].label == "x2");
    CHECK(report.entries[0].rank == 1);
    CHECK(report.entries[1].label == "x1");
    CHECK(report.entries[1].rank == 2);
    CHECK_FALSE(report.entries[0].tied);
}

TEST_CASE("equal effects tie at rank 1 in declaration order") {
    auto result = fake_result("y", {{"score", 0.3}, {"flag", 0.3}});
    auto report = relative_importance(result);
    CHECK(report.entries[0].label == "score");
    CHECK(report.entries[0].rank == 1);
    CHECK(report.entries[1].label == "flag");
    CHECK(report.entries[1].rank == 1);
    CHECK(report.entries[0].tied);
    CHECK(report.entries[1].tied);
}

TEST_CASE("one predictor is too few to compare") {
    auto result = fake_result("y", {{"x", 0.4}});
    CHECK_THROWS_AS(relative_importance(result), TooFewPredictors);
}

TEST_CASE("report entries copy coefficients bit for bit") {
    auto result = fake_result("y", {{"x1", 0.1 + 0.2}, {"x2", -0.30000000000000004}});
    auto report = relative_importance(result);
    for (const auto& entry : report.entries) {
        double original = result.coefficient(entry.label);
        CHECK(std::memcmp(&entry.b_p, &original, sizeof(double)) == 0);
    }
}

TEST_CASE("a three-category nominal contributes two ranked entries") {
    Dataset data;
    data.source_id = "s";
    data.n_rows = 9;
    data.columns.push_back({"y", std::vector<double>{0.1, 0.4, 0.9, 0.2, 0.5, 0.8, 0.3, 0.6, 0.7}});
    data.columns.push_back(
        {"city", std::vector<std::string>{"a", "b", "c", "a", "b", "c", "a", "b", "c"}});

    VariableSpec dv = numeric_spec("y", 0.0, 1.0, Role::dependent);
    VariableSpec nominal;
    nominal.name = "city";
    nominal.kind = Kind::nominal;
    nominal.categories = {"a", "b", "c"};
    nominal.reference_category = "a";

    auto percentized = percentize_dataset(data, std::vector<VariableSpec>{dv, nominal});
    auto design = make_design(percentized, "y",
                              std::vector<std::string>{"city=b", "city=c"});
    auto report = relative_importance(fit_ols(design));
    CHECK(report.entries.size() == 2);
}

TEST_CASE("relative impact ranks DVs of a shared IV") {
    std::vector<BpRegressionResult> results{
        fake_result("recall", {{"age", 0.2}}),
        fake_result("liking", {{"age", 0.5}}),
    };
    auto report = relative_impact(results, "age");
    REQUIRE(report.entries.size() == 2);
    CHECK(report.entries[0].label == "liking");
    CHECK(report.entries[0].b_p == 0.5);
    CHECK(report.entries[1].label == "recall");
}

TEST_CASE("identical DVs tie deterministically") {
    std::vector<BpRegressionResult> results{
        fake_result("recall", {{"age", 0.2}}),
        fake_result("recall", {{"age", 0.2}}),
    };
    auto report = relative_impact(results, "age");
    CHECK(report.entries[0].rank == 1);
    CHECK(report.entries[1].rank == 1);
    CHECK(report.entries[0].tied);
}

TEST_CASE("a result without the IV is an error naming the fit") {
    std::vector<BpRegressionResult> results{
        fake_result("recall", {{"age", 0.2}}),
        fake_result("liking", {{"exposure", 0.4}}),
    };
    try {
        relative_impact(results, "age");
        FAIL("expected MissingIv");
    } catch (const MissingIv& e) {
        CHECK(std::string(e.what()).find("liking") != std::string::npos);
    }
}

TEST_CASE("one knowledge and three attitude DVs give four entries") {
    std::vector<BpRegressionResult> results{
        fake_result("knowledge", {{"age", 0.11}}),
        fake_result("attitude_a", {{"age", 0.21}}),
        fake_result("attitude_b", {{"age", 0.16}}),
        fake_result("attitude_c", {{"age", 0.08}}),
    };
    auto report = relative_impact(results, "age");
    CHECK(report.entries.size() == 4);
    CHECK(report.entries[0].label == "attitude_a");
}

TEST_CASE("pooling maps each part's scale onto one 0-1 column") {
    // Midpoints of a 1-7 and a 1-9 scale pool as equals.
    auto year_a = numeric_dataset("y1992", {{"liking", {4.0, 1.0, 7.0}}});
    auto year_b = numeric_dataset("y1993", {{"liking", {5.0, 1.0, 9.0}}});
    std::vector<PoolPart> parts{
        {year_a, {numeric_spec("liking", 1.0, 7.0)}},
        {year_b, {numeric_spec("liking", 1.0, 9.0)}},
    };
    auto pooled = pool_datasets(parts);

    REQUIRE(pooled.n_rows == 6);
    const auto* liking = pooled.find("liking");
    REQUIRE(liking != nullptr);
    CHECK(std::fabs(liking->values[0] - 0.5) < 1e-12);
    CHECK(std::fabs(liking->values[3] - 0.5) < 1e-12);
    // Scale endpoints land on 0 and 1 exactly, from either part.
    CHECK(liking->values[1] == 0.0);
    CHECK(liking->values[2] == 1.0);
    CHECK(liking->values[4] == 0.0);
    CHECK(liking->values[5] == 1.0);

    const auto* indicator = pooled.find("part=y1993");
    REQUIRE(indicator != nullptr);
    CHECK(indicator->values[0] == 0.0);
    CHECK(indicator->values[3] == 1.0);
}

TEST_CASE("three parts with mixed scales pool into one unified column") {
    std::vector<PoolPart> parts{
        {numeric_dataset("y1992", {{"liking", {2.0, 6.0}}}), {numeric_spec("liking", 1.0, 7.0)}},
        {numeric_dataset("y1994", {{"liking", {3.0, 5.0}}}), {numeric_spec("liking", 1.0, 7.0)}},
        {numeric_dataset("y1993", {{"liking", {2.0, 8.0}}}), {numeric_spec("liking", 1.0, 9.0)}},
    };
    auto pooled = pool_datasets(parts);
    std::size_t unified = 0;
    for (const auto& c : pooled.columns) {
        if (c.name == "liking") ++unified;
    }
    CHECK(unified == 1);
    CHECK(pooled.n_rows == 6);
    // Two part indicators for three parts.
    CHECK(pooled.columns.size() == 3);
}

TEST_CASE("pooling a dataset with itself leaves estimates alone") {
    std::mt19937 rng(157);
    std::size_t n = 20;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = oracle::uniform(rng, 1.0, 7.0);
        y[i] = oracle::uniform(rng, 0.0, 100.0);
    }
    auto data = numeric_dataset("wave", {{"x", x}, {"y", y}});
    std::vector<VariableSpec> specs{numeric_spec("x", 1.0, 7.0),
                                    numeric_spec("y", 0.0, 100.0, Role::dependent)};

    auto single = percentize_dataset(data, specs);
    auto single_fit =
        fit_ols(make_design(single, "y", std::vector<std::string>{"x"}));

    auto second = data;
    second.source_id = "wave2";
    std::vector<PoolPart> parts{{data, specs}, {second, specs}};
    auto pooled = pool_datasets(parts);
    auto pooled_fit =
        fit_ols(make_design(pooled, "y", std::vector<std::string>{"x"}));

    CHECK(pooled_fit.n_used == 2 * single_fit.n_used);
    CHECK(std::fabs(pooled_fit.coefficient("x") - single_fit.coefficient("x")) < 1e-12);
    CHECK(std::fabs(pooled_fit.coefficient("intercept") -
                    single_fit.coefficient("intercept")) < 1e-12);
}

TEST_CASE("parts that percentize to different schemas are rejected") {
    std::vector<PoolPart> parts{
        {numeric_dataset("a", {{"x", {1.0, 2.0}}}), {numeric_spec("x", 0.0, 10.0)}},
        {numeric_dataset("b", {{"z", {1.0, 2.0}}}), {numeric_spec("z", 0.0, 10.0)}},
    };
    CHECK_THROWS_AS(pool_datasets(parts), SchemaMismatch);
}

TEST_CASE("single-mediator decomposition recovers constructed paths") {
    // M = 0.5 X, Y = 0.4 M + 0.1 X: a = 0.5, b = 0.4, c' = 0.1,
    // indirect 0.20, total 0.30.
    std::size_t n = 12;
    PercentizedDataset data;
    data.n_rows = n;
    std::vector<double> x(n), m(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        m[i] = 0.5 * x[i];
        y[i] = 0.4 * m[i] + 0.1 * x[i];
    }
    data.columns.push_back(column("x", x));
    data.columns.push_back(column("m", m));
    data.columns.push_back(column("y", y));

    // m is collinear with x by construction, so the outcome equation would be
    // rank-deficient; perturb m slightly off the line while keeping the check
    // on the identity, not the point values.
    for (std::size_t i = 0; i < n; ++i) {
        data.columns[1].values[i] += (i % 2 == 0 ? 1.0 : -1.0) * 1e-3 * (1.0 + double(i));
    }

    auto decomposition = mediation_paths(data, "y", "x", std::vector<std::string>{"m"});
    CHECK(std::fabs(decomposition.total_effect -
                    (decomposition.direct_effect + decomposition.indirect_total)) < 1e-10);
}

TEST_CASE("exactly constructed single mediator gives indirect 0.20 and total 0.30") {
    // m = 0.5 x + e with e summing to zero within each x level, so e is
    // exactly orthogonal to {1, x} and the fitted a is 0.5; y = 0.4 m + 0.1 x
    // holds exactly, so b = 0.4 and c' = 0.1.
    std::vector<double> x{0.0, 0.25, 0.5, 0.75, 0.0, 0.25, 0.5, 0.75};
    std::vector<double> e{0.125, 0.0625, -0.09375, 0.03125,
                          -0.125, -0.0625, 0.09375, -0.03125};
    std::size_t n = x.size();
    std::vector<double> m(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = 0.5 * x[i] + e[i];
        y[i] = 0.4 * m[i] + 0.1 * x[i];
    }
    PercentizedDataset data;
    data.n_rows = n;
    data.columns.push_back(column("x", x));
    data.columns.push_back(column("m", m));
    data.columns.push_back(column("y", y));

    auto decomposition = mediation_paths(data, "y", "x", std::vector<std::string>{"m"});
    REQUIRE(decomposition.indirect_effects.size() == 1);
    CHECK(decomposition.indirect_effects[0].first == "x->m->y");
    CHECK(std::fabs(decomposition.direct_effect - 0.1) < 1e-10);
    CHECK(std::fabs(decomposition.indirect_total - 0.2) < 1e-10);
    CHECK(std::fabs(decomposition.total_effect - 0.3) < 1e-10);
}

TEST_CASE("a mediator independent of the IV carries no indirect effect") {
    // x alternates within each m level, so cov(x, m) = 0 exactly.
    std::vector<double> x{0.0, 1.0, 0.0, 1.0, 0.25, 0.75, 0.25, 0.75};
    std::vector<double> m{0.0, 0.0, 1.0, 1.0, 0.3, 0.3, 0.9, 0.9};
    std::size_t n = x.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = 0.6 * m[i] + 0.2 * x[i];

    PercentizedDataset data;
    data.n_rows = n;
    data.columns.push_back(column("x", x));
    data.columns.push_back(column("m", m));
    data.columns.push_back(column("y", y));

    auto decomposition = mediation_paths(data, "y", "x", std::vector<std::string>{"m"});
    CHECK(std::fabs(decomposition.indirect_total) < 1e-12);
    CHECK(std::fabs(decomposition.total_effect - decomposition.direct_effect) < 1e-12);
}

TEST_CASE("two serial mediators satisfy the decomposition identity") {
    std::mt19937 rng(163);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 40;
        PercentizedDataset data;
        data.n_rows = n;
        std::vector<double> x(n), m1(n), m2(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = oracle::uniform(rng, 0.0, 1.0);
            m1[i] = 0.6 * x[i] + oracle::uniform(rng, -0.2, 0.2);
            m2[i] = 0.5 * m1[i] + 0.2 * x[i] + oracle::uniform(rng, -0.2, 0.2);
            y[i] = 0.4 * m2[i] + 0.3 * m1[i] + 0.1 * x[i] + oracle::uniform(rng, -0.1, 0.1);
        }
        data.columns.push_back(column("x", x));
        data.columns.push_back(column("m1", m1));
        data.columns.push_back(column("m2", m2));
        data.columns.push_back(column("y", y));

        auto decomposition =
            mediation_paths(data, "y", "x", std::vector<std::string>{"m1", "m2"});
        REQUIRE(decomposition.indirect_effects.size() == 3);
        CHECK(std::fabs(decomposition.total_effect - (decomposition.direct_effect +
                                                      decomposition.indirect_total)) < 1e-10);

        // total = c' + a1 b1 + a2 b2 + a1 d21 b2, spelled out.
        auto path = [&](const std::string& label) {
            for (const auto& [name, value] : decomposition.paths) {
                if (name == label) return value;
            }
            FAIL("missing path " << label);
            return 0.0;
        };
        double spelled = path("c_prime") + path("a1") * path("b1") +
                         path("a2") * path("b2") +
                         path("a1") * path("d2_1") * path("b2");
        CHECK(std::fabs(decomposition.total_effect - spelled) < 1e-10);
    }
}

TEST_CASE("mediation shares one listwise-complete sample") {
    PercentizedDataset data;
    data.n_rows = 8;
    data.columns.push_back(column("x", {0.1, 0.9, 0.4, 0.7, 0.2, 0.8, 0.3, 0.6}));
    data.columns.push_back(column("m", {0.2, 0.8, missing_value(), 0.6, 0.3, 0.7, 0.4, 0.5}));
    data.columns.push_back(column("y", {0.1, 0.9, 0.5, missing_value(), 0.2, 0.8, 0.4, 0.6}));

    auto decomposition = mediation_paths(data, "y", "x", std::vector<std::string>{"m"});
    CHECK(decomposition.n_used == 6);
    CHECK(std::fabs(decomposition.total_effect - (decomposition.direct_effect +
                                                  decomposition.indirect_total)) < 1e-10);
}

TEST_CASE("rescaling a raw variable and its anchor preserves rankings") {
    std::mt19937 rng(167);
    std::size_t n = 24;
    std::vector<double> x1(n), x2(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = oracle::uniform(rng, 0.0, 10.0);
        x2[i] = oracle::uniform(rng, 1.0, 5.0);
        y[i] = oracle::uniform(rng, 0.0, 50.0);
    }

    auto fit_report = [&](double scale) {
        std::vector<double> x1_scaled(n);
        for (std::size_t i = 0; i < n; ++i) x1_scaled[i] = x1[i] * scale;
        auto data = numeric_dataset("s", {{"x1", x1_scaled}, {"x2", x2}, {"y", y}});
        std::vector<VariableSpec> specs{
            numeric_spec("x1", 0.0, 10.0 * scale),
            numeric_spec("x2", 1.0, 5.0),
            numeric_spec("y", 0.0, 50.0, Role::dependent),
        };
        auto percentized = percentize_dataset(data, specs);
        auto result = fit_ols(
            make_design(percentized, "y", std::vector<std::string>{"x1", "x2"}));
        return relative_importance(result);
    };

    auto base = fit_report(1.0);
    auto scaled = fit_report(40.0);
    REQUIRE(base.entries.size() == scaled.entries.size());
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(base.entries[i].label == scaled.entries[i].label);
        CHECK(base.entries[i].rank == scaled.entries[i].rank);
        CHECK(std::fabs(base.entries[i].b_p - scaled.entries[i].b_p) < 1e-10);
    }
}

TEST_CASE("coefficient contrast uses the full covariance") {
    std::mt19937 rng(173);
    Matrix x = oracle::random_design(rng, 30, 2);
    std::vector<double> y(30);
    for (auto& v : y) v = oracle::uniform(rng, -1.0, 1.0);
    DesignMatrix design;
    design.x = x;
    design.y = y;
    design.predictor_names = {"x1", "x2"};
    design.dv_name = "y";
    auto result = fit_ols(design);

    auto contrast = coefficient_contrast(result, "x1", "x2");
    CHECK(contrast.difference ==
          doctest::Approx(result.coefficient("x1") - result.coefficient("x2")));
    CHECK(contrast.standard_error > 0.0);
    CHECK_THROWS_AS(coefficient_contrast(result, "x1", "nope"), UnknownColumn);
}
