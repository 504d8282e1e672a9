#include "pscale/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pscale/percentize.hpp"

namespace pscale {

namespace {

constexpr double z_95 = 1.959963984540054;  // normal-theory 95% quantile

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::declared: return "declared";
        case Provenance::suggested: return "suggested";
        case Provenance::observed: return "observed";
    }
    return "?";
}

std::string anchor_text(const ScaleAnchor& anchor) {
    return "[" + compact(anchor.conceptual_min) + ", " + compact(anchor.conceptual_max) +
           "] -> [" + compact(anchor.target_min) + ", " + compact(anchor.target_max) + "]";
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

}  // namespace

std::string fixed(double value, int decimals) {
    if (is_missing(value)) return "NA";
    if (value == 0.0) value = 0.0;  // fold -0 into 0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string compact(double value) {
    if (is_missing(value)) return "NA";
    if (value == 0.0) value = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void TableWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_.push_back(delimiter_);
        const std::string& cell = cells[i];
        bool needs_quotes = cell.find(delimiter_) != std::string::npos ||
                            cell.find('"') != std::string::npos;
        if (needs_quotes) {
            out_.push_back('"');
            for (char c : cell) {
                if (c == '"') out_.push_back('"');
                out_.push_back(c);
            }
            out_.push_back('"');
        } else {
            out_ += cell;
        }
    }
    out_.push_back('\n');
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot write '" + tmp + "'");
        file << content;
        if (!file) throw IoError("write failed for '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
}

std::string render_transform_log(const std::vector<TransformRecord>& log) {
    std::string out = "transforms:\n";
    for (const auto& record : log) {
        out += "  ";
        if (!record.part.empty()) out += "[" + record.part + "] ";
        out += record.column + ": ";
        out += transform_kind_name(record.kind);
        if (record.kind == TransformKind::dummy) {
            if (!record.reference_category.empty()) {
                out += " reference=" + record.reference_category + " -> " +
                       join(record.dummy_columns, ", ");
            } else {
                out += " 0-or-1";
            }
        } else {
            out += " " + anchor_text(record.anchor) + " (" +
                   std::string(provenance_name(record.anchor.provenance)) + ")";
        }
        out += "\n";
    }
    return out;
}

namespace {

std::string precision_line(const ReportOptions& options) {
    return "precision: " + std::to_string(options.coefficient_decimals) +
           "-decimal coefficients, " + std::to_string(options.percent_decimals) +
           "-decimal percent display\n";
}

}  // namespace

std::string render_regress_text(const BpRegressionResult& result,
                                const std::vector<TransformRecord>& log,
                                const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    std::string out = precision_line(options);
    out += render_transform_log(log);
    out += "rows dropped (missing): " + std::to_string(result.rows_dropped) + "\n";
    out += "n used: " + std::to_string(result.n_used) + "\n\n";
    out += "coefficients (dv = " + result.dv_name + "):\n";
    for (std::size_t i = 0; i < result.names.size(); ++i) {
        out += "  " + result.names[i] + ": b_p = " + fixed(result.coefficients[i], d);
        out += " (" + format_percent(result.coefficients[i], options.percent_decimals) + ")";
        out += ", se = " + fixed(result.standard_errors[i], d) + "\n";
    }
    out += "r_squared: " + fixed(result.r_squared, d) + "\n";
    out += "residual_variance: " + fixed(result.residual_variance, 2 * d) + "\n";
    return out;
}

std::string coefficient_table(const BpRegressionResult& result,
                              const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    TableWriter table(options.delimiter);
    table.row({"variable", "b_p", "se", "ci_low", "ci_high", "rank"});

    // Ranks by |b_p| among the predictors; the intercept is unranked.
    std::vector<ComparisonEntry> ranked;
    for (std::size_t i = 1; i < result.names.size(); ++i) {
        ranked.push_back({result.names[i], result.coefficients[i],
                          result.standard_errors[i], 0, false});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const ComparisonEntry& a, const ComparisonEntry& b) {
                         return std::fabs(a.b_p) > std::fabs(b.b_p);
                     });
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        ranked[i].rank = (i > 0 && std::fabs(ranked[i].b_p) == std::fabs(ranked[i - 1].b_p))
                             ? ranked[i - 1].rank
                             : static_cast<int>(i + 1);
    }
    auto rank_of = [&](const std::string& name) {
        for (const auto& entry : ranked) {
            if (entry.label == name) return entry.rank;
        }
        return 0;
    };

    for (std::size_t i = 0; i < result.names.size(); ++i) {
        double b = result.coefficients[i];
        double se = result.standard_errors[i];
        std::string rank =
            (result.names[i] == "intercept") ? "" : std::to_string(rank_of(result.names[i]));
        table.row({result.names[i], fixed(b, d), fixed(se, d), fixed(b - z_95 * se, d),
                   fixed(b + z_95 * se, d), rank});
    }
    return table.str();
}

std::string render_comparison_text(const ComparisonReport& report,
                                   const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    std::string out = precision_line(options);
    for (const auto& note : report.notes) out += note + "\n";
    out += "\n";
    for (const auto& entry : report.entries) {
        out += "  rank " + std::to_string(entry.rank) + ": " + entry.label +
               ", b_p = " + fixed(entry.b_p, d) + " (" +
               format_percent(entry.b_p, options.percent_decimals) + "), se = " +
               fixed(entry.standard_error, d);
        if (entry.tied) out += " [tied]";
        out += "\n";
    }
    return out;
}

std::string comparison_table(const ComparisonReport& report, const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    TableWriter table(options.delimiter);
    table.row({"variable", "b_p", "se", "ci_low", "ci_high", "rank"});
    for (const auto& entry : report.entries) {
        table.row({entry.label, fixed(entry.b_p, d), fixed(entry.standard_error, d),
                   fixed(entry.b_p - z_95 * entry.standard_error, d),
                   fixed(entry.b_p + z_95 * entry.standard_error, d),
                   std::to_string(entry.rank)});
    }
    return table.str();
}

std::string render_difference_text(const GroupDifference& diff, const std::string& dv_name,
                                   const std::vector<TransformRecord>& log,
                                   const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    std::string out = precision_line(options);
    out += render_transform_log(log);
    out += "groups: treatment n = " + std::to_string(diff.n_treatment) +
           ", control n = " + std::to_string(diff.n_control) + "\n\n";
    out += "percent difference (" + dv_name + "): " + fixed(diff.estimate, d) + " (" +
           format_percent(diff.estimate, options.percent_decimals) + ")\n";
    out += "se: " + fixed(diff.standard_error, d) + "\n";
    out += "ci95: [" + fixed(diff.estimate - z_95 * diff.standard_error, d) + ", " +
           fixed(diff.estimate + z_95 * diff.standard_error, d) + "]\n";
    return out;
}

std::string difference_table(const GroupDifference& diff, const std::string& dv_name,
                             const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    TableWriter table(options.delimiter);
    table.row({"variable", "b_p", "se", "ci_low", "ci_high", "rank"});
    table.row({dv_name, fixed(diff.estimate, d), fixed(diff.standard_error, d),
               fixed(diff.estimate - z_95 * diff.standard_error, d),
               fixed(diff.estimate + z_95 * diff.standard_error, d), "1"});
    return table.str();
}

std::string render_mediation_text(const MediationDecomposition& decomposition,
                                  const std::vector<TransformRecord>& log,
                                  const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    std::string out = precision_line(options);
    out += render_transform_log(log);
    out += "n used: " + std::to_string(decomposition.n_used) + "\n\n";
    out += "paths:\n";
    for (const auto& [label, value] : decomposition.paths) {
        out += "  " + label + " = " + fixed(value, d) + "\n";
    }
    out += "indirect effects:\n";
    for (const auto& [route, value] : decomposition.indirect_effects) {
        out += "  " + route + " = " + fixed(value, d) + "\n";
    }
    out += "direct effect: " + fixed(decomposition.direct_effect, d) + "\n";
    out += "indirect total: " + fixed(decomposition.indirect_total, d) + "\n";
    out += "total effect: " + fixed(decomposition.total_effect, d) + " (" +
           format_percent(decomposition.total_effect, options.percent_decimals) + ")\n";
    return out;
}

std::string mediation_table(const MediationDecomposition& decomposition,
                            const ReportOptions& options) {
    const int d = options.coefficient_decimals;
    TableWriter table(options.delimiter);
    table.row({"variable", "b_p", "se", "ci_low", "ci_high", "rank"});

    // Path coefficients carry their equation SEs; product terms have none.
    auto se_for = [&](const std::string& label) -> double {
        const auto& equations = decomposition.equations;
        auto index_after = [&](std::size_t pos) {
            std::size_t value = 0;
            while (pos < label.size() && label[pos] >= '0' && label[pos] <= '9') {
                value = value * 10 + static_cast<std::size_t>(label[pos] - '0');
                ++pos;
            }
            return value;  // 1-based mediator index
        };
        if (label == "c_prime") {
            const auto& outcome = equations[equations.size() - 2];
            return outcome.standard_errors[1];  // IV is the first predictor
        }
        if (label == "c_total") {
            return equations.back().standard_errors[1];
        }
        if (label[0] == 'a') {
            return equations[index_after(1) - 1].standard_errors[1];
        }
        if (label[0] == 'd') {
            std::size_t j = index_after(1);
            std::size_t i = index_after(label.find('_') + 1);
            const auto& eq = equations[j - 1];
            return eq.standard_error(equations[i - 1].dv_name);
        }
        if (label[0] == 'b') {
            std::size_t j = index_after(1);
            const auto& outcome = equations[equations.size() - 2];
            return outcome.standard_errors[1 + j];  // after intercept and IV
        }
        return missing_value();
    };

    for (const auto& [label, value] : decomposition.paths) {
        double se = se_for(label);
        std::string lo = is_missing(se) ? "NA" : fixed(value - z_95 * se, d);
        std::string hi = is_missing(se) ? "NA" : fixed(value + z_95 * se, d);
        table.row({label, fixed(value, d), fixed(se, d), lo, hi, ""});
    }
    for (const auto& [route, value] : decomposition.indirect_effects) {
        table.row({route, fixed(value, d), "NA", "NA", "NA", ""});
    }
    return table.str();
}

std::string render_suggestions_text(const std::vector<SuggestionBlock>& blocks) {
    std::string out;
    for (const auto& block : blocks) {
        out += block.variable + " (observed " + compact(block.observed_min) + " to " +
               compact(block.observed_max) + "):\n";
        for (std::size_t i = 0; i < block.candidates.size(); ++i) {
            const auto& c = block.candidates[i];
            out += "  " + std::to_string(i + 1) + ". (" + compact(c.conceptual_min) + ", " +
                   compact(c.conceptual_max) + ") score " + fixed(c.score, 3) + " - " +
                   c.rationale + "\n";
        }
    }
    return out;
}

std::string suggestions_table(const std::vector<SuggestionBlock>& blocks,
                              const ReportOptions& options) {
    TableWriter table(options.delimiter);
    table.row({"variable", "rank", "conceptual_min", "conceptual_max", "score"});
    for (const auto& block : blocks) {
        for (std::size_t i = 0; i < block.candidates.size(); ++i) {
            const auto& c = block.candidates[i];
            table.row({block.variable, std::to_string(i + 1), compact(c.conceptual_min),
                       compact(c.conceptual_max), fixed(c.score, 3)});
        }
    }
    return table.str();
}

std::string render_percentized_text(const PercentizedDataset& data,
                                    const ReportOptions& options) {
    std::string out = precision_line(options);
    out += render_transform_log(data.transform_log);
    out += "rows: " + std::to_string(data.n_rows) + "\n";
    out += "columns: ";
    std::vector<std::string> names;
    names.reserve(data.columns.size());
    for (const auto& c : data.columns) names.push_back(c.name);
    out += join(names, ", ") + "\n";
    return out;
}

std::string percentized_table(const PercentizedDataset& data, const ReportOptions& options) {
    TableWriter table(options.delimiter);
    std::vector<std::string> header;
    header.reserve(data.columns.size());
    for (const auto& c : data.columns) header.push_back(c.name);
    table.row(header);
    for (std::size_t row = 0; row < data.n_rows; ++row) {
        std::vector<std::string> cells;
        cells.reserve(data.columns.size());
        for (const auto& c : data.columns) cells.push_back(compact(c.values[row]));
        table.row(cells);
    }
    return table.str();
}

}  // namespace pscale
