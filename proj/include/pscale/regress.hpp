#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pscale/dataset.hpp"
#include "pscale/linalg.hpp"
#include "pscale/scale.hpp"

namespace pscale {

// Response plus predictor matrix with a leading constant-1 column. Built
// from a percentized dataset with listwise deletion already applied: no
// missing cells, n >= columns + 1.
struct DesignMatrix {
    std::vector<std::string> predictor_names;  // excludes the intercept
    Matrix x;                                  // n x (p + 1)
    std::vector<double> y;
    std::string dv_name;
    std::size_t rows_dropped = 0;

    std::size_t n_rows() const { return x.rows(); }
    std::size_t n_predictors() const { return predictor_names.size(); }
};

DesignMatrix make_design(const PercentizedDataset& data, std::string_view dv,
                         std::span<const std::string> predictors);

// Fitted percentage coefficients: OLS slopes with DV and IVs on percentage
// scales, plus classical homoskedastic standard errors and R^2.
struct BpRegressionResult {
    std::vector<std::string> names;  // "intercept" first, then predictors
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    Matrix covariance;  // (p+1) x (p+1) coefficient covariance
    double r_squared = 0.0;
    double residual_variance = 0.0;
    std::size_t n_used = 0;
    std::size_t rows_dropped = 0;
    std::string dv_name;
    std::optional<ScaleAnchor> dv_anchor;
    std::vector<std::pair<std::string, ScaleAnchor>> iv_anchors;

    bool has(std::string_view name) const;
    double coefficient(std::string_view name) const;     // throws UnknownColumn
    double standard_error(std::string_view name) const;  // throws UnknownColumn
};

// Minimizes the residual sum of squares via the orthogonal decomposition in
// linalg. Throws RankDeficient (naming the collinear columns) or
// InsufficientRows.
BpRegressionResult fit_ols(const DesignMatrix& design);

// The percentage coefficient implied by a raw-scale slope:
// b_raw * (IV conceptual width) / (DV conceptual width).
double rescale_coefficient(double b_raw, const ScaleAnchor& iv_anchor,
                           const ScaleAnchor& dv_anchor);

// Coefficients as they would appear with DV and IVs on 0-100 scales: slopes
// unchanged (the scale factors cancel), intercept times 100.
std::vector<std::pair<std::string, double>> pomp_coefficients(
    const BpRegressionResult& result);

// Beta weights from z-scored DV and predictors; a contrast baseline only.
// Throws ZeroVariance naming the offending column.
std::vector<std::pair<std::string, double>> standardized_coefficients(
    const DesignMatrix& design);

struct GroupDifference {
    double estimate = 0.0;        // mean(treatment) - mean(control), DV fraction
    double standard_error = 0.0;  // two-sample pooled-variance SE
    std::size_t n_treatment = 0;
    std::size_t n_control = 0;
};

// Percentizes both groups' DV values via the anchor and returns the
// treatment-minus-control mean difference. Equals the slope of a regression
// on a 0/1 group dummy.
GroupDifference percent_difference(std::span<const double> treatment,
                                   std::span<const double> control,
                                   const ScaleAnchor& dv_anchor);

// Pearson r; pairs with a missing side are skipped. NaN when either side
// has zero variance.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace pscale
