#pragma once

#include <span>
#include <string>

#include "pscale/dataset.hpp"
#include "pscale/scale.hpp"

namespace pscale {

// (value - min) / (max - min) * 100. The 0-100 percent-scale conversion.
double to_percent_scale(double value, double min, double max);

// [(value - min_o) / (max_o - min_o)] * (max_n - min_n) + min_n. The general
// min-max rescale of a source range onto a chosen target range.
double min_max_normalize(double value, double min_o, double max_o,
                         double min_n, double max_n);

// (value - conceptual_min) / (conceptual_max - conceptual_min), mapped onto
// the anchor's target range. Anchor endpoints map to the target endpoints
// exactly; values outside the conceptual range map outside the target range
// (no clamping, so affine invariants survive).
double percentize_value(double value, const ScaleAnchor& anchor);

// Inverse of percentize_value.
double raw_from_percent(double score, const ScaleAnchor& anchor);

// Renders a 0-1-scale value as a percent string: 0.87 -> "87.0%".
std::string format_percent(double value, int decimals = 1);

// Percentizes every declared variable: numerical columns via their anchors,
// binary columns passed through as 0/1, nominal columns expanded into k-1
// dummies named "<var>=<category>" (reference category omitted). Missing
// values stay missing. Output column order follows spec order.
PercentizedDataset percentize_dataset(const Dataset& data,
                                      std::span<const VariableSpec> specs);

}  // namespace pscale
