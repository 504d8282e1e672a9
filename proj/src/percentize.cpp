#include "pscale/percentize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace pscale {

std::string_view transform_kind_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::percent_scale: return "percent-scale";
        case TransformKind::min_max: return "min-max";
        case TransformKind::conceptual: return "anchored";
        case TransformKind::dummy: return "dummy";
    }
    return "?";
}

namespace {

void require_range(double lo, double hi, const char* what) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw NonFiniteInput(std::string(what) + " bounds must be finite");
    }
    if (hi <= lo) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s range [%g, %g] has zero or negative width",
                      what, lo, hi);
        throw DegenerateAnchor(buf);
    }
}

}  // namespace

double to_percent_scale(double value, double min, double max) {
    require_range(min, max, "source");
    return (value - min) / (max - min) * 100.0;
}

double min_max_normalize(double value, double min_o, double max_o,
                         double min_n, double max_n) {
    require_range(min_o, max_o, "source");
    require_range(min_n, max_n, "target");
    return (value - min_o) / (max_o - min_o) * (max_n - min_n) + min_n;
}

double percentize_value(double value, const ScaleAnchor& anchor) {
    require_valid(anchor);
    double ratio = (value - anchor.conceptual_min) / anchor.conceptual_width();
    if (anchor.unit_target()) return ratio;
    // Convex form keeps the endpoints exact: ratio 0 -> target_min, 1 -> target_max.
    return anchor.target_min * (1.0 - ratio) + anchor.target_max * ratio;
}

double raw_from_percent(double score, const ScaleAnchor& anchor) {
    require_valid(anchor);
    double ratio = (score - anchor.target_min) / anchor.target_width();
    return anchor.conceptual_min * (1.0 - ratio) + anchor.conceptual_max * ratio;
}

std::string format_percent(double value, int decimals) {
    if (decimals < 0) decimals = 0;
    double percent = value * 100.0;
    if (percent == 0.0) percent = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f%%", decimals, percent);
    return buf;
}

namespace {

PercentizedColumn percentize_numeric(const Column& column, const ScaleAnchor& anchor) {
    PercentizedColumn out;
    out.name = column.name;
    out.anchor = anchor;
    out.source_column = column.name;
    out.values.reserve(column.numeric().size());
    for (double v : column.numeric()) {
        out.values.push_back(is_missing(v) ? missing_value() : percentize_value(v, anchor));
    }
    return out;
}

PercentizedColumn pass_through_binary(const Column& column) {
    PercentizedColumn out;
    out.name = column.name;
    out.anchor = ScaleAnchor::unit(0.0, 1.0);
    out.is_dummy = true;
    out.source_column = column.name;
    out.values.reserve(column.numeric().size());
    for (std::size_t row = 0; row < column.numeric().size(); ++row) {
        double v = column.numeric()[row];
        if (!is_missing(v) && v != 0.0 && v != 1.0) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "binary column '%s' contains value %g at row %zu",
                          column.name.c_str(), v, row + 1);
            throw UnknownCategory(buf);
        }
        out.values.push_back(v);
    }
    return out;
}

}  // namespace

PercentizedDataset percentize_dataset(const Dataset& data,
                                      std::span<const VariableSpec> specs) {
    PercentizedDataset out;
    out.n_rows = data.n_rows;
    out.source_id = data.source_id;

    for (const auto& spec : specs) {
        require_valid(spec);
        const Column* column = data.find(spec.name);
        if (!column) {
            throw UnknownColumn("column '" + spec.name + "' not found in dataset '" +
                                data.source_id + "'");
        }

        switch (spec.kind) {
            case Kind::numerical: {
                if (!spec.anchor) {
                    throw MissingAnchor("numerical variable '" + spec.name +
                                        "' has no conceptual anchor");
                }
                if (!column->is_numeric()) {
                    throw InvalidSpec("variable '" + spec.name +
                                      "' is declared numerical but holds text");
                }
                out.columns.push_back(percentize_numeric(*column, *spec.anchor));
                out.transform_log.push_back({spec.name, TransformKind::conceptual,
                                             *spec.anchor, {}, "", data.source_id});
                break;
            }
            case Kind::binary: {
                if (!column->is_numeric()) {
                    throw InvalidSpec("variable '" + spec.name +
                                      "' is declared binary but holds text");
                }
                out.columns.push_back(pass_through_binary(*column));
                out.transform_log.push_back({spec.name, TransformKind::dummy,
                                             ScaleAnchor::unit(0.0, 1.0),
                                             {spec.name}, "", data.source_id});
                break;
            }
            case Kind::nominal: {
                if (column->is_numeric()) {
                    throw InvalidSpec("variable '" + spec.name +
                                      "' is declared nominal but holds numbers");
                }
                const auto& labels = column->labels();
                for (std::size_t row = 0; row < labels.size(); ++row) {
                    const auto& label = labels[row];
                    if (label.empty()) continue;  // missing
                    if (std::find(spec.categories.begin(), spec.categories.end(), label) ==
                        spec.categories.end()) {
                        throw UnknownCategory("column '" + spec.name + "' row " +
                                              std::to_string(row + 1) +
                                              ": category '" + label + "' not declared");
                    }
                }
                TransformRecord record{spec.name, TransformKind::dummy,
                                       ScaleAnchor::unit(0.0, 1.0), {},
                                       spec.reference_category, data.source_id};
                for (const auto& category : spec.categories) {
                    if (category == spec.reference_category) continue;
                    PercentizedColumn dummy;
                    dummy.name = spec.name + "=" + category;
                    dummy.anchor = ScaleAnchor::unit(0.0, 1.0);
                    dummy.is_dummy = true;
                    dummy.source_column = spec.name;
                    dummy.category = category;
                    dummy.values.reserve(labels.size());
                    for (const auto& label : labels) {
                        dummy.values.push_back(label.empty() ? missing_value()
                                                             : (label == category ? 1.0 : 0.0));
                    }
                    record.dummy_columns.push_back(dummy.name);
                    out.columns.push_back(std::move(dummy));
                }
                out.transform_log.push_back(std::move(record));
                break;
            }
        }
    }
    return out;
}

}  // namespace pscale
