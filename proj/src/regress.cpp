#include "pscale/regress.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pscale/percentize.hpp"

namespace pscale {

DesignMatrix make_design(const PercentizedDataset& data, std::string_view dv,
                         std::span<const std::string> predictors) {
    const PercentizedColumn* dv_column = data.find(dv);
    if (!dv_column) throw UnknownColumn("dependent variable '" + std::string(dv) + "' not found");

    std::vector<const PercentizedColumn*> columns;
    columns.reserve(predictors.size());
    for (const auto& name : predictors) {
        const PercentizedColumn* c = data.find(name);
        if (!c) throw UnknownColumn("predictor '" + name + "' not found");
        columns.push_back(c);
    }

    // Listwise deletion: keep rows complete across the DV and every predictor.
    std::vector<std::size_t> keep;
    keep.reserve(data.n_rows);
    for (std::size_t row = 0; row < data.n_rows; ++row) {
        bool complete = !is_missing(dv_column->values[row]);
        for (const auto* c : columns) complete = complete && !is_missing(c->values[row]);
        if (complete) keep.push_back(row);
    }

    DesignMatrix design;
    design.dv_name = std::string(dv);
    design.predictor_names.assign(predictors.begin(), predictors.end());
    design.rows_dropped = data.n_rows - keep.size();

    const std::size_t n = keep.size();
    const std::size_t total_cols = predictors.size() + 1;
    if (n < total_cols + 1) {
        throw InsufficientRows("only " + std::to_string(n) + " complete rows for " +
                               std::to_string(total_cols) + " design columns");
    }

    design.x = Matrix(n, total_cols, 0.0);
    design.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        design.x(i, 0) = 1.0;
        for (std::size_t j = 0; j < columns.size(); ++j) {
            design.x(i, j + 1) = columns[j]->values[keep[i]];
        }
        design.y[i] = dv_column->values[keep[i]];
    }
    return design;
}

bool BpRegressionResult::has(std::string_view name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

double BpRegressionResult::coefficient(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return coefficients[i];
    }
    throw UnknownColumn("no coefficient named '" + std::string(name) + "'");
}

double BpRegressionResult::standard_error(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return standard_errors[i];
    }
    throw UnknownColumn("no coefficient named '" + std::string(name) + "'");
}

BpRegressionResult fit_ols(const DesignMatrix& design) {
    const std::size_t n = design.n_rows();
    const std::size_t p = design.x.cols();
    if (n < p + 1) {
        throw InsufficientRows("only " + std::to_string(n) + " rows for " +
                               std::to_string(p) + " design columns");
    }

    LeastSquaresSolution solution = solve_least_squares(design.x, design.y);
    if (!solution.full_rank()) {
        std::string offenders;
        for (std::size_t j : solution.deficient_columns) {
            if (!offenders.empty()) offenders += ", ";
            offenders += (j == 0) ? "intercept" : design.predictor_names[j - 1];
        }
        throw RankDeficient("collinear design columns: " + offenders);
    }

    BpRegressionResult result;
    result.dv_name = design.dv_name;
    result.names.reserve(p);
    result.names.push_back("intercept");
    result.names.insert(result.names.end(), design.predictor_names.begin(),
                        design.predictor_names.end());
    result.coefficients = solution.coefficients;
    result.n_used = n;
    result.rows_dropped = design.rows_dropped;

    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fitted = 0.0;
        for (std::size_t j = 0; j < p; ++j) fitted += design.x(i, j) * result.coefficients[j];
        double r = design.y[i] - fitted;
        rss += r * r;
    }
    double y_mean = std::accumulate(design.y.begin(), design.y.end(), 0.0) /
                    static_cast<double>(n);
    double tss = 0.0;
    for (double v : design.y) tss += (v - y_mean) * (v - y_mean);
    result.r_squared = (tss > 0.0) ? 1.0 - rss / tss : (rss == 0.0 ? 1.0 : 0.0);

    double sigma2 = rss / static_cast<double>(n - p);
    result.residual_variance = sigma2;
    result.covariance = Matrix(p, p, 0.0);
    result.standard_errors.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            result.covariance(i, j) = sigma2 * solution.xtx_inverse(i, j);
        }
        // Guard tiny negative diagonals from rounding.
        result.standard_errors[i] = std::sqrt(std::max(0.0, result.covariance(i, i)));
    }
    return result;
}

double rescale_coefficient(double b_raw, const ScaleAnchor& iv_anchor,
                           const ScaleAnchor& dv_anchor) {
    require_valid(iv_anchor);
    require_valid(dv_anchor);
    return b_raw * iv_anchor.conceptual_width() / dv_anchor.conceptual_width();
}

std::vector<std::pair<std::string, double>> pomp_coefficients(
    const BpRegressionResult& result) {
    std::vector<std::pair<std::string, double>> pomp;
    pomp.reserve(result.names.size());
    for (std::size_t i = 0; i < result.names.size(); ++i) {
        double value = result.coefficients[i];
        if (result.names[i] == "intercept") value *= 100.0;
        pomp.emplace_back(result.names[i], value);
    }
    return pomp;
}

namespace {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation (n - 1)
    bool constant = false;
};

Moments column_moments(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    Moments m;
    m.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.sd = std::sqrt(ss / (n - 1.0));
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    m.constant = (*lo == *hi);
    return m;
}

}  // namespace

std::vector<std::pair<std::string, double>> standardized_coefficients(
    const DesignMatrix& design) {
    const std::size_t n = design.n_rows();
    const std::size_t p = design.x.cols();

    Moments dv = column_moments(design.y);
    if (dv.constant) {
        throw ZeroVariance("dependent variable '" + design.dv_name + "' has zero variance");
    }

    Matrix z(n, p, 0.0);
    std::vector<double> zy(n);
    for (std::size_t i = 0; i < n; ++i) {
        z(i, 0) = 1.0;
        zy[i] = (design.y[i] - dv.mean) / dv.sd;
    }
    for (std::size_t j = 1; j < p; ++j) {
        std::vector<double> column(n);
        for (std::size_t i = 0; i < n; ++i) column[i] = design.x(i, j);
        Moments m = column_moments(column);
        if (m.constant) {
            throw ZeroVariance("predictor '" + design.predictor_names[j - 1] +
                               "' has zero variance");
        }
        for (std::size_t i = 0; i < n; ++i) z(i, j) = (column[i] - m.mean) / m.sd;
    }

    LeastSquaresSolution solution = solve_least_squares(z, zy);
    if (!solution.full_rank()) {
        throw RankDeficient("collinear predictors in standardized fit");
    }

    std::vector<std::pair<std::string, double>> betas;
    betas.reserve(p - 1);
    for (std::size_t j = 1; j < p; ++j) {
        betas.emplace_back(design.predictor_names[j - 1], solution.coefficients[j]);
    }
    return betas;
}

GroupDifference percent_difference(std::span<const double> treatment,
                                   std::span<const double> control,
                                   const ScaleAnchor& dv_anchor) {
    require_valid(dv_anchor);

    auto percentized_mean = [&](std::span<const double> group, const char* label,
                                std::size_t& count, double& sum_sq, double& mean) {
        std::vector<double> values;
        values.reserve(group.size());
        for (double v : group) {
            if (!is_missing(v)) values.push_back(percentize_value(v, dv_anchor));
        }
        if (values.empty()) throw EmptyGroup(std::string(label) + " group is empty");
        count = values.size();
        mean = std::accumulate(values.begin(), values.end(), 0.0) /
               static_cast<double>(count);
        sum_sq = 0.0;
        for (double v : values) sum_sq += (v - mean) * (v - mean);
    };

    GroupDifference diff;
    double mean_t = 0.0, mean_c = 0.0, ss_t = 0.0, ss_c = 0.0;
    percentized_mean(treatment, "treatment", diff.n_treatment, ss_t, mean_t);
    percentized_mean(control, "control", diff.n_control, ss_c, mean_c);

    diff.estimate = mean_t - mean_c;
    std::size_t df = diff.n_treatment + diff.n_control - 2;
    if (df > 0) {
        double pooled = (ss_t + ss_c) / static_cast<double>(df);
        diff.standard_error = std::sqrt(pooled * (1.0 / diff.n_treatment +
                                                  1.0 / diff.n_control));
    } else {
        diff.standard_error = missing_value();
    }
    return diff;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    std::size_t n = std::min(a.size(), b.size());
    double mean_a = 0.0, mean_b = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_missing(a[i]) || is_missing(b[i])) continue;
        mean_a += a[i];
        mean_b += b[i];
        ++count;
    }
    if (count < 2) return missing_value();
    mean_a /= static_cast<double>(count);
    mean_b /= static_cast<double>(count);

    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_missing(a[i]) || is_missing(b[i])) continue;
        double da = a[i] - mean_a;
        double db = b[i] - mean_b;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) return missing_value();
    return sab / std::sqrt(saa * sbb);
}

}  // namespace pscale
