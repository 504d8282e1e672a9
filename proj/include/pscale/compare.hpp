#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pscale/dataset.hpp"
#include "pscale/regress.hpp"

namespace pscale {

enum class ComparisonKind {
    relative_importance,  // different IVs, one DV
    relative_impact,      // one IV, different DVs
    percent_difference,
    pooled,
    mediation,
};

struct ComparisonEntry {
    std::string label;
    double b_p = 0.0;
    double standard_error = 0.0;
    int rank = 0;  // 1-based, competition style; equal |b_p| shares a rank
    bool tied = false;
};

struct ComparisonReport {
    ComparisonKind kind = ComparisonKind::relative_importance;
    std::vector<ComparisonEntry> entries;  // sorted by descending |b_p|
    std::vector<std::string> notes;        // anchor provenance etc.
};

// Ranks a fitted model's predictors (numerical, binary, and nominal dummies
// alike) by |b_p|. Ties keep declaration order and are flagged.
ComparisonReport relative_importance(const BpRegressionResult& result);

// One entry per DV with the named IV's b_p, ranked by |b_p|. Each result
// must contain the IV (MissingIv otherwise).
ComparisonReport relative_impact(std::span<const BpRegressionResult> results,
                                 std::string_view iv_name);

struct PoolPart {
    Dataset data;
    std::vector<VariableSpec> specs;
};

// Percentizes each part with its own anchors (so a 7-point and a 9-point
// scale both land on 0-1) and row-concatenates the parts. Adds 0/1
// "part=<label>" indicator columns (first part is the reference) for
// analyst-opt-in fixed effects. SchemaMismatch when the parts do not
// percentize to the same columns.
PercentizedDataset pool_datasets(std::span<const PoolPart> parts);

struct MediationDecomposition {
    // Path coefficients by conventional label: a<j> (IV -> mediator j),
    // d<j>_<i> (mediator i -> mediator j), b<j> (mediator j -> DV),
    // c_prime (direct), c_total (total).
    std::vector<std::pair<std::string, double>> paths;
    // Route label ("iv->m1->dv") -> product of path coefficients.
    std::vector<std::pair<std::string, double>> indirect_effects;
    double total_effect = 0.0;
    double direct_effect = 0.0;
    double indirect_total = 0.0;
    std::size_t n_used = 0;

    // Underlying fits, in estimation order: one per mediator, then the DV
    // equation, then the total-effect equation.
    std::vector<BpRegressionResult> equations;
};

// Serial-mediation OLS system on one listwise-complete sample: each mediator
// regressed on the IV, earlier mediators, and controls; the DV on the IV,
// all mediators, and controls. Indirect effects are products of path
// coefficients along each route through the mediator chain, so
// total = direct + sum(indirect) holds as an identity.
MediationDecomposition mediation_paths(const PercentizedDataset& data,
                                       std::string_view dv, std::string_view iv,
                                       std::span<const std::string> mediators,
                                       std::span<const std::string> controls = {});

struct CoefficientContrast {
    double difference = 0.0;
    double standard_error = 0.0;
    double z = 0.0;
};

// Normal-theory contrast between two coefficients of one fit, using the full
// coefficient covariance. A convenience beyond point-estimate comparison.
CoefficientContrast coefficient_contrast(const BpRegressionResult& result,
                                         std::string_view first,
                                         std::string_view second);

}  // namespace pscale
