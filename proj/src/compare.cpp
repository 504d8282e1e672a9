#include "pscale/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pscale/percentize.hpp"

namespace pscale {

namespace {

// Stable sort by |b_p| descending (declaration order within ties), then
// competition-style ranks with exact-equality tie flags.
void rank_entries(std::vector<ComparisonEntry>& entries) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ComparisonEntry& a, const ComparisonEntry& b) {
                         return std::fabs(a.b_p) > std::fabs(b.b_p);
                     });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0 && std::fabs(entries[i].b_p) == std::fabs(entries[i - 1].b_p)) {
            entries[i].rank = entries[i - 1].rank;
            entries[i].tied = true;
            entries[i - 1].tied = true;
        } else {
            entries[i].rank = static_cast<int>(i + 1);
        }
    }
}

std::string anchor_note(const std::string& name, const ScaleAnchor& anchor) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: anchored [%g, %g] -> [%g, %g]", name.c_str(),
                  anchor.conceptual_min, anchor.conceptual_max, anchor.target_min,
                  anchor.target_max);
    return buf;
}

}  // namespace

ComparisonReport relative_importance(const BpRegressionResult& result) {
    std::size_t predictors = result.names.size() - 1;
    if (predictors < 2) {
        throw TooFewPredictors("relative importance needs at least 2 predictors, got " +
                               std::to_string(predictors));
    }

    ComparisonReport report;
    report.kind = ComparisonKind::relative_importance;
    for (std::size_t i = 0; i < result.names.size(); ++i) {
        if (result.names[i] == "intercept") continue;
        report.entries.push_back(
            {result.names[i], result.coefficients[i], result.standard_errors[i], 0, false});
    }
    rank_entries(report.entries);

    report.notes.push_back("dv: " + result.dv_name);
    for (const auto& [name, anchor] : result.iv_anchors) {
        report.notes.push_back(anchor_note(name, anchor));
    }
    return report;
}

ComparisonReport relative_impact(std::span<const BpRegressionResult> results,
                                 std::string_view iv_name) {
    ComparisonReport report;
    report.kind = ComparisonKind::relative_impact;
    for (const auto& result : results) {
        if (!result.has(iv_name)) {
            throw MissingIv("fit for dv '" + result.dv_name + "' has no coefficient for '" +
                            std::string(iv_name) + "'");
        }
        report.entries.push_back({result.dv_name, result.coefficient(iv_name),
                                  result.standard_error(iv_name), 0, false});
    }
    rank_entries(report.entries);
    report.notes.push_back("iv: " + std::string(iv_name));
    return report;
}

PercentizedDataset pool_datasets(std::span<const PoolPart> parts) {
    if (parts.empty()) throw SchemaMismatch("nothing to pool");

    std::vector<PercentizedDataset> percentized;
    std::vector<std::string> labels;
    percentized.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        percentized.push_back(percentize_dataset(parts[i].data, parts[i].specs));
        std::string label = parts[i].data.source_id.empty()
                                ? "part" + std::to_string(i + 1)
                                : parts[i].data.source_id;
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
            label += "#" + std::to_string(i + 1);
        }
        labels.push_back(label);
    }

    const auto& head = percentized.front();
    for (std::size_t i = 1; i < percentized.size(); ++i) {
        if (percentized[i].columns.size() != head.columns.size()) {
            throw SchemaMismatch("part '" + labels[i] + "' percentizes to " +
                                 std::to_string(percentized[i].columns.size()) +
                                 " columns, part '" + labels[0] + "' to " +
                                 std::to_string(head.columns.size()));
        }
        for (std::size_t c = 0; c < head.columns.size(); ++c) {
            if (percentized[i].columns[c].name != head.columns[c].name) {
                throw SchemaMismatch("part '" + labels[i] + "' column " +
                                     std::to_string(c + 1) + " is '" +
                                     percentized[i].columns[c].name + "', expected '" +
                                     head.columns[c].name + "'");
            }
        }
    }

    PercentizedDataset pooled;
    pooled.source_id = "pooled";
    for (const auto& part : percentized) pooled.n_rows += part.n_rows;

    for (std::size_t c = 0; c < head.columns.size(); ++c) {
        PercentizedColumn column = head.columns[c];
        column.values.clear();
        column.values.reserve(pooled.n_rows);
        for (const auto& part : percentized) {
            const auto& v = part.columns[c].values;
            column.values.insert(column.values.end(), v.begin(), v.end());
        }
        pooled.columns.push_back(std::move(column));
    }

    // Part indicators (first part is the reference), opt-in as fixed effects.
    for (std::size_t i = 1; i < percentized.size(); ++i) {
        PercentizedColumn indicator;
        indicator.name = "part=" + labels[i];
        indicator.anchor = ScaleAnchor::unit(0.0, 1.0);
        indicator.is_dummy = true;
        indicator.source_column = "part";
        indicator.category = labels[i];
        indicator.values.reserve(pooled.n_rows);
        for (std::size_t j = 0; j < percentized.size(); ++j) {
            indicator.values.insert(indicator.values.end(), percentized[j].n_rows,
                                    j == i ? 1.0 : 0.0);
        }
        pooled.columns.push_back(std::move(indicator));
    }

    for (std::size_t i = 0; i < percentized.size(); ++i) {
        for (TransformRecord record : percentized[i].transform_log) {
            record.part = labels[i];
            pooled.transform_log.push_back(std::move(record));
        }
    }
    return pooled;
}

namespace {

// Restrict to rows complete across every named column, so all equations of
// the mediation system share one estimation sample.
PercentizedDataset listwise_complete(const PercentizedDataset& data,
                                     const std::vector<std::string>& names) {
    std::vector<const PercentizedColumn*> columns;
    for (const auto& name : names) {
        const PercentizedColumn* c = data.find(name);
        if (!c) throw UnknownColumn("column '" + name + "' not found");
        columns.push_back(c);
    }

    std::vector<std::size_t> keep;
    for (std::size_t row = 0; row < data.n_rows; ++row) {
        bool complete = true;
        for (const auto* c : columns) complete = complete && !is_missing(c->values[row]);
        if (complete) keep.push_back(row);
    }

    PercentizedDataset subset;
    subset.source_id = data.source_id;
    subset.n_rows = keep.size();
    subset.transform_log = data.transform_log;
    for (const auto* c : columns) {
        PercentizedColumn column = *c;
        column.values.clear();
        column.values.reserve(keep.size());
        for (std::size_t row : keep) column.values.push_back(c->values[row]);
        subset.columns.push_back(std::move(column));
    }
    return subset;
}

}  // namespace

MediationDecomposition mediation_paths(const PercentizedDataset& data,
                                       std::string_view dv, std::string_view iv,
                                       std::span<const std::string> mediators,
                                       std::span<const std::string> controls) {
    if (mediators.empty()) throw InvalidSpec("mediation needs at least one mediator");
    if (mediators.size() > 16) {
        throw InvalidSpec("mediation routes grow exponentially; 16 mediators is the cap");
    }

    std::vector<std::string> used;
    used.emplace_back(dv);
    used.emplace_back(iv);
    used.insert(used.end(), mediators.begin(), mediators.end());
    used.insert(used.end(), controls.begin(), controls.end());
    PercentizedDataset sample = listwise_complete(data, used);

    const std::size_t k = mediators.size();
    MediationDecomposition decomposition;
    decomposition.n_used = sample.n_rows;

    // a_j and d_j_i from each mediator's equation.
    std::vector<double> a(k, 0.0);
    std::vector<std::vector<double>> d(k, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::string> predictors;
        predictors.emplace_back(iv);
        for (std::size_t i = 0; i < j; ++i) predictors.push_back(mediators[i]);
        predictors.insert(predictors.end(), controls.begin(), controls.end());
        BpRegressionResult fit = fit_ols(make_design(sample, mediators[j], predictors));
        a[j] = fit.coefficient(iv);
        decomposition.paths.emplace_back("a" + std::to_string(j + 1), a[j]);
        for (std::size_t i = 0; i < j; ++i) {
            d[j][i] = fit.coefficient(mediators[i]);
            decomposition.paths.emplace_back(
                "d" + std::to_string(j + 1) + "_" + std::to_string(i + 1), d[j][i]);
        }
        decomposition.equations.push_back(std::move(fit));
    }

    // b_j and the direct effect from the DV equation.
    std::vector<std::string> outcome_predictors;
    outcome_predictors.emplace_back(iv);
    outcome_predictors.insert(outcome_predictors.end(), mediators.begin(), mediators.end());
    outcome_predictors.insert(outcome_predictors.end(), controls.begin(), controls.end());
    BpRegressionResult outcome = fit_ols(make_design(sample, dv, outcome_predictors));
    std::vector<double> b(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        b[j] = outcome.coefficient(mediators[j]);
        decomposition.paths.emplace_back("b" + std::to_string(j + 1), b[j]);
    }
    decomposition.direct_effect = outcome.coefficient(iv);
    decomposition.paths.emplace_back("c_prime", decomposition.direct_effect);
    decomposition.equations.push_back(std::move(outcome));

    // Total effect on the same sample.
    std::vector<std::string> total_predictors;
    total_predictors.emplace_back(iv);
    total_predictors.insert(total_predictors.end(), controls.begin(), controls.end());
    BpRegressionResult total = fit_ols(make_design(sample, dv, total_predictors));
    decomposition.total_effect = total.coefficient(iv);
    decomposition.paths.emplace_back("c_total", decomposition.total_effect);
    decomposition.equations.push_back(std::move(total));

    // One route per increasing subsequence of mediators.
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::vector<std::size_t> route;
        for (std::size_t j = 0; j < k; ++j) {
            if (mask & (std::size_t{1} << j)) route.push_back(j);
        }
        double product = a[route.front()];
        for (std::size_t step = 1; step < route.size(); ++step) {
            product *= d[route[step]][route[step - 1]];
        }
        product *= b[route.back()];

        std::string label = std::string(iv);
        for (std::size_t j : route) label += "->" + mediators[j];
        label += "->" + std::string(dv);
        decomposition.indirect_effects.emplace_back(std::move(label), product);
        decomposition.indirect_total += product;
    }
    return decomposition;
}

CoefficientContrast coefficient_contrast(const BpRegressionResult& result,
                                         std::string_view first,
                                         std::string_view second) {
    std::size_t i = result.names.size(), j = result.names.size();
    for (std::size_t idx = 0; idx < result.names.size(); ++idx) {
        if (result.names[idx] == first) i = idx;
        if (result.names[idx] == second) j = idx;
    }
    if (i == result.names.size()) throw UnknownColumn("no coefficient named '" + std::string(first) + "'");
    if (j == result.names.size()) throw UnknownColumn("no coefficient named '" + std::string(second) + "'");

    CoefficientContrast contrast;
    contrast.difference = result.coefficients[i] - result.coefficients[j];
    double variance = result.covariance(i, i) + result.covariance(j, j) -
                      2.0 * result.covariance(i, j);
    contrast.standard_error = std::sqrt(std::max(0.0, variance));
    contrast.z = contrast.standard_error > 0.0 ? contrast.difference / contrast.standard_error
                                               : missing_value();
    return contrast;
}

}  // namespace pscale
