#include "pscale/scale.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pscale {

namespace {

std::string num(double v) {
    if (v == 0.0) v = 0.0;  // fold -0 into 0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Significant decimal digits, with trailing zeros not counted: 100 -> 1,
// 0.25 -> 2, 0 -> 0. Used to prefer "rounder" anchor pairs.
int significant_digits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", std::fabs(v));
    std::string digits;
    for (const char* p = buf; *p && *p != 'e' && *p != 'E'; ++p) {
        if (*p >= '0' && *p <= '9') digits.push_back(*p);
    }
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) return 0;
    std::size_t last = digits.find_last_not_of('0');
    return static_cast<int>(last - first + 1);
}

// Round steps m * 10^k, m in {1, 2, 2.5, 5}: the conventional grid of round
// numbers used for scale anchors.
double round_step(double mantissa, int exponent) {
    double p = std::pow(10.0, std::abs(exponent));
    return exponent >= 0 ? mantissa * p : mantissa / p;
}

}  // namespace

void require_valid(const ScaleAnchor& anchor) {
    if (!std::isfinite(anchor.conceptual_min) || !std::isfinite(anchor.conceptual_max) ||
        !std::isfinite(anchor.target_min) || !std::isfinite(anchor.target_max)) {
        throw NonFiniteInput("anchor bounds must be finite");
    }
    if (anchor.conceptual_max <= anchor.conceptual_min) {
        throw DegenerateAnchor("conceptual range [" + num(anchor.conceptual_min) + ", " +
                               num(anchor.conceptual_max) + "] has zero or negative width");
    }
    if (anchor.target_max <= anchor.target_min) {
        throw DegenerateAnchor("target range [" + num(anchor.target_min) + ", " +
                               num(anchor.target_max) + "] has zero or negative width");
    }
}

std::vector<std::string> VariableSpec::percentized_names() const {
    if (kind != Kind::nominal) return {name};
    std::vector<std::string> names;
    for (const auto& category : categories) {
        if (category != reference_category) names.push_back(name + "=" + category);
    }
    return names;
}

void require_valid(const VariableSpec& spec) {
    if (spec.name.empty()) throw InvalidSpec("variable spec without a name");
    if (spec.kind == Kind::nominal) {
        if (spec.categories.size() < 2) {
            throw InvalidSpec("nominal variable '" + spec.name +
                              "' needs at least 2 categories");
        }
        if (std::find(spec.categories.begin(), spec.categories.end(),
                      spec.reference_category) == spec.categories.end()) {
            throw InvalidSpec("reference category '" + spec.reference_category +
                              "' of variable '" + spec.name +
                              "' is not among its categories");
        }
        for (std::size_t i = 0; i < spec.categories.size(); ++i) {
            for (std::size_t j = i + 1; j < spec.categories.size(); ++j) {
                if (spec.categories[i] == spec.categories[j]) {
                    throw InvalidSpec("duplicate category '" + spec.categories[i] +
                                      "' in variable '" + spec.name + "'");
                }
            }
        }
    }
}

AnchorValidation validate_anchor(const ScaleAnchor& anchor,
                                 std::span<const double> values) {
    require_valid(anchor);
    AnchorValidation result;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (std::isnan(v)) continue;
        if (v < anchor.conceptual_min) {
            result.rows_below.push_back(i);
            result.warnings.push_back("row " + std::to_string(i + 1) + ": value " + num(v) +
                                      " below conceptual minimum " +
                                      num(anchor.conceptual_min));
        } else if (v > anchor.conceptual_max) {
            result.rows_above.push_back(i);
            result.warnings.push_back("row " + std::to_string(i + 1) + ": value " + num(v) +
                                      " above conceptual maximum " +
                                      num(anchor.conceptual_max));
        }
    }
    return result;
}

std::vector<AnchorCandidate> suggest_anchors(
    double observed_min, double observed_max,
    std::optional<std::pair<double, double>> declared_bounds) {
    if (!std::isfinite(observed_min) || !std::isfinite(observed_max)) {
        throw NonFiniteInput("observed bounds must be finite");
    }
    if (observed_min >= observed_max) {
        throw DegenerateAnchor("observed range [" + num(observed_min) + ", " +
                               num(observed_max) + "] has zero or negative width");
    }

    if (declared_bounds) {
        auto [lo, hi] = *declared_bounds;
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw NonFiniteInput("declared bounds must be finite");
        }
        if (hi <= lo) {
            throw DegenerateAnchor("declared bounds [" + num(lo) + ", " + num(hi) +
                                   "] have zero or negative width");
        }
        return {{lo, hi, 1.0, "declared scale bounds"}};
    }

    const double span = observed_max - observed_min;

    // Round the observed range outward on grids no finer than the range
    // itself, so candidates are whole-scale choices (e.g. 0-100 for ages
    // 18-83) rather than data-hugging pairs.
    constexpr double mantissas[] = {1.0, 2.0, 2.5, 5.0};
    constexpr std::size_t max_candidates = 8;

    std::vector<AnchorCandidate> candidates;
    int k = static_cast<int>(std::floor(std::log10(span))) - 1;
    while (candidates.size() < max_candidates && k < 330) {
        for (double m : mantissas) {
            double step = round_step(m, k);
            if (!std::isfinite(step) || step < span || candidates.size() >= max_candidates) {
                continue;
            }
            double lo = step * std::floor(observed_min / step);
            double hi = step * std::ceil(observed_max / step);
            if (lo > observed_min) lo -= step;
            if (hi < observed_max) hi += step;
            bool duplicate = std::any_of(
                candidates.begin(), candidates.end(), [&](const AnchorCandidate& c) {
                    return c.conceptual_min == lo && c.conceptual_max == hi;
                });
            if (duplicate) continue;
            candidates.push_back({lo, hi, 0.0,
                                  "rounds observed [" + num(observed_min) + ", " +
                                      num(observed_max) + "] outward at step " + num(step)});
        }
        ++k;
    }

    // Narrowest bracketing pair first; prefer rounder endpoints, then a
    // smaller |conceptual_min|, when widths tie.
    std::sort(candidates.begin(), candidates.end(),
              [](const AnchorCandidate& a, const AnchorCandidate& b) {
                  double wa = a.conceptual_max - a.conceptual_min;
                  double wb = b.conceptual_max - b.conceptual_min;
                  if (wa != wb) return wa < wb;
                  int da = significant_digits(a.conceptual_min) +
                           significant_digits(a.conceptual_max);
                  int db = significant_digits(b.conceptual_min) +
                           significant_digits(b.conceptual_max);
                  if (da != db) return da < db;
                  return std::fabs(a.conceptual_min) < std::fabs(b.conceptual_min);
              });

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        candidates[i].score = 1.0 / static_cast<double>(i + 1);
    }
    return candidates;
}

}  // namespace pscale
