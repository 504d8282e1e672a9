#include "pscale/run.hpp"

#include "pscale/csv.hpp"
#include "pscale/percentize.hpp"
#include "pscale/report.hpp"

namespace pscale {

namespace {

struct Loaded {
    Dataset data;
    std::vector<VariableSpec> specs;  // effective for this input
};

Loaded load_part(const AnalysisConfig& config, const std::string& path) {
    Dataset data = load_csv(path, config.specs, config.delimiter);
    std::vector<VariableSpec> specs = specs_for_part(config.specs, data.source_id);
    return {std::move(data), std::move(specs)};
}

const VariableSpec* find_spec(std::span<const VariableSpec> specs, std::string_view name) {
    for (const auto& s : specs) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::vector<const VariableSpec*> specs_with_role(std::span<const VariableSpec> specs,
                                                 Role role) {
    std::vector<const VariableSpec*> out;
    for (const auto& s : specs) {
        if (s.role == role) out.push_back(&s);
    }
    return out;
}

// Percentized column names of the given specs, in declaration order.
std::vector<std::string> percentized_names(std::span<const VariableSpec* const> specs) {
    std::vector<std::string> names;
    for (const auto* s : specs) {
        auto expanded = s->percentized_names();
        names.insert(names.end(), expanded.begin(), expanded.end());
    }
    return names;
}

void attach_anchors(BpRegressionResult& result, const PercentizedDataset& data,
                    std::string_view dv, std::span<const std::string> predictors) {
    if (const auto* c = data.find(dv)) result.dv_anchor = c->anchor;
    for (const auto& name : predictors) {
        if (const auto* c = data.find(name)) result.iv_anchors.emplace_back(name, c->anchor);
    }
}

// Out-of-anchor values are legal (they transform past the target range) but
// worth flagging: one warning line per offending row.
std::string anchor_warnings(const Dataset& data, std::span<const VariableSpec> specs) {
    std::string block;
    for (const auto& spec : specs) {
        if (spec.kind != Kind::numerical || !spec.anchor) continue;
        const Column* column = data.find(spec.name);
        if (!column || !column->is_numeric()) continue;
        auto verdict = validate_anchor(*spec.anchor, column->numeric());
        for (const auto& warning : verdict.warnings) {
            block += "  " + spec.name + " " + warning + "\n";
        }
    }
    if (block.empty()) return block;
    return "warnings (values outside the conceptual range):\n" + block;
}

std::string header(const AnalysisConfig& config,
                   const std::vector<std::pair<std::string, std::size_t>>& inputs) {
    std::string out = "percentage-scale analysis\n";
    out += "command: " + std::string(command_name(config.command)) + "\n";
    for (const auto& [id, rows] : inputs) {
        out += "input: " + id + " (" + std::to_string(rows) + " rows)\n";
    }
    return out;
}

// Fit of one DV on the declared independents + controls.
BpRegressionResult fit_declared(const PercentizedDataset& percentized,
                                std::span<const VariableSpec> specs,
                                const std::string& dv_name) {
    auto independents = specs_with_role(specs, Role::independent);
    auto controls = specs_with_role(specs, Role::control);
    std::vector<const VariableSpec*> predictor_specs = independents;
    predictor_specs.insert(predictor_specs.end(), controls.begin(), controls.end());
    std::vector<std::string> predictors = percentized_names(predictor_specs);

    BpRegressionResult result = fit_ols(make_design(percentized, dv_name, predictors));
    attach_anchors(result, percentized, dv_name, predictors);
    return result;
}

std::string run_regress(const AnalysisConfig& config, const Loaded& input,
                        const ReportOptions& options, std::string head) {
    PercentizedDataset percentized = percentize_dataset(input.data, input.specs);
    const VariableSpec* dv = specs_with_role(input.specs, Role::dependent).front();
    BpRegressionResult result = fit_declared(percentized, input.specs, dv->name);

    if (config.command == Command::compare_importance) {
        ComparisonReport report = relative_importance(result);
        if (config.format == OutputFormat::table) return comparison_table(report, options);
        return head + render_comparison_text(report, options);
    }
    if (config.format == OutputFormat::table) return coefficient_table(result, options);
    return head + render_regress_text(result, percentized.transform_log, options) +
           anchor_warnings(input.data, input.specs);
}

std::string run_impact(const AnalysisConfig& config, const Loaded& input,
                       const ReportOptions& options, std::string head) {
    PercentizedDataset percentized = percentize_dataset(input.data, input.specs);
    std::string iv = config.impact_iv;
    if (iv.empty()) iv = specs_with_role(input.specs, Role::independent).front()->name;

    std::vector<BpRegressionResult> results;
    for (const auto* dv : specs_with_role(input.specs, Role::dependent)) {
        results.push_back(fit_declared(percentized, input.specs, dv->name));
    }
    ComparisonReport report = relative_impact(results, iv);
    if (config.format == OutputFormat::table) return comparison_table(report, options);
    return head + render_comparison_text(report, options);
}

std::string run_percent_diff(const AnalysisConfig& config, const Loaded& input,
                             const ReportOptions& options, std::string head) {
    const VariableSpec* dv = specs_with_role(input.specs, Role::dependent).front();
    const VariableSpec* group = nullptr;
    for (const auto& s : input.specs) {
        if (s.role == Role::independent && s.kind == Kind::binary) group = &s;
    }
    if (!group) throw ConfigError("percent-diff needs a binary independent variable");
    if (!dv->anchor) throw MissingAnchor("dependent variable '" + dv->name + "' has no anchor");

    const Column* dv_column = input.data.find(dv->name);
    const Column* group_column = input.data.find(group->name);
    if (!dv_column) throw UnknownColumn("column '" + dv->name + "' not found");
    if (!group_column) throw UnknownColumn("column '" + group->name + "' not found");
    if (!dv_column->is_numeric() || !group_column->is_numeric()) {
        throw InvalidSpec("percent-diff needs numeric dv and group columns");
    }

    std::vector<double> treatment, control;
    for (std::size_t row = 0; row < input.data.n_rows; ++row) {
        double g = group_column->numeric()[row];
        double v = dv_column->numeric()[row];
        if (is_missing(g) || is_missing(v)) continue;
        if (g == 1.0) {
            treatment.push_back(v);
        } else if (g == 0.0) {
            control.push_back(v);
        } else {
            throw UnknownCategory("binary column '" + group->name + "' contains value " +
                                  compact(g) + " at row " + std::to_string(row + 1));
        }
    }

    GroupDifference diff = percent_difference(treatment, control, *dv->anchor);
    std::vector<TransformRecord> log{{dv->name, TransformKind::conceptual, *dv->anchor,
                                      {}, "", input.data.source_id}};
    if (config.format == OutputFormat::table) {
        return difference_table(diff, dv->name, options);
    }
    return head + render_difference_text(diff, dv->name, log, options);
}

std::string run_pool(const AnalysisConfig& config, const ReportOptions& options,
                     std::vector<std::pair<std::string, std::size_t>>& inputs) {
    std::vector<PoolPart> parts;
    for (const auto& path : config.input_paths) {
        Loaded part = load_part(config, path);
        inputs.emplace_back(part.data.source_id, part.data.n_rows);
        parts.push_back({std::move(part.data), std::move(part.specs)});
    }
    PercentizedDataset pooled = pool_datasets(parts);
    if (config.format == OutputFormat::table) return percentized_table(pooled, options);
    return header(config, inputs) + render_percentized_text(pooled, options);
}

std::string run_mediate(const AnalysisConfig& config, const Loaded& input,
                        const ReportOptions& options, std::string head) {
    PercentizedDataset percentized = percentize_dataset(input.data, input.specs);
    const VariableSpec* dv = specs_with_role(input.specs, Role::dependent).front();

    std::string iv = config.impact_iv;
    if (iv.empty()) iv = specs_with_role(input.specs, Role::independent).front()->name;
    const VariableSpec* iv_spec = find_spec(input.specs, iv);
    if (iv_spec && iv_spec->kind == Kind::nominal) {
        throw InvalidSpec("mediation IV must be numerical or binary, '" + iv + "' is nominal");
    }

    std::vector<std::string> mediators =
        percentized_names(specs_with_role(input.specs, Role::mediator));

    // Controls: declared controls plus any independents other than the IV.
    std::vector<const VariableSpec*> control_specs;
    for (const auto* s : specs_with_role(input.specs, Role::independent)) {
        if (s->name != iv) control_specs.push_back(s);
    }
    auto declared_controls = specs_with_role(input.specs, Role::control);
    control_specs.insert(control_specs.end(), declared_controls.begin(),
                         declared_controls.end());
    std::vector<std::string> controls = percentized_names(control_specs);

    MediationDecomposition decomposition =
        mediation_paths(percentized, dv->name, iv, mediators, controls);
    if (config.format == OutputFormat::table) {
        return mediation_table(decomposition, options);
    }
    return head + render_mediation_text(decomposition, percentized.transform_log, options);
}

std::string run_suggest(const AnalysisConfig& config, const Loaded& input,
                        const ReportOptions& options, std::string head) {
    std::vector<SuggestionBlock> blocks;

    auto observed_range = [](const std::vector<double>& values, SuggestionBlock& block) {
        bool any = false;
        for (double v : values) {
            if (is_missing(v)) continue;
            if (!any || v < block.observed_min) block.observed_min = v;
            if (!any || v > block.observed_max) block.observed_max = v;
            any = true;
        }
        return any;
    };

    if (input.specs.empty()) {
        // No declarations: suggest for every numeric column.
        for (const auto& column : input.data.columns) {
            if (!column.is_numeric()) continue;
            SuggestionBlock block;
            block.variable = column.name;
            if (!observed_range(column.numeric(), block)) continue;
            block.candidates = suggest_anchors(block.observed_min, block.observed_max);
            blocks.push_back(std::move(block));
        }
    } else {
        for (const auto& spec : input.specs) {
            if (spec.kind != Kind::numerical) continue;
            const Column* column = input.data.find(spec.name);
            if (!column) throw UnknownColumn("column '" + spec.name + "' not found");
            if (!column->is_numeric()) {
                throw InvalidSpec("variable '" + spec.name +
                                  "' is declared numerical but holds text");
            }
            SuggestionBlock block;
            block.variable = spec.name;
            if (!observed_range(column->numeric(), block)) continue;
            std::optional<std::pair<double, double>> declared;
            if (spec.anchor) {
                declared = {spec.anchor->conceptual_min, spec.anchor->conceptual_max};
            }
            block.candidates =
                suggest_anchors(block.observed_min, block.observed_max, declared);
            blocks.push_back(std::move(block));
        }
    }

    if (config.format == OutputFormat::table) return suggestions_table(blocks, options);
    return head + render_suggestions_text(blocks);
}

}  // namespace

int run(const AnalysisConfig& config) {
    validate(config);

    ReportOptions options;
    options.coefficient_decimals = config.coefficient_precision;
    options.percent_decimals = config.percent_precision;
    options.delimiter = config.delimiter;

    std::string report;
    if (config.command == Command::pool) {
        std::vector<std::pair<std::string, std::size_t>> inputs;
        report = run_pool(config, options, inputs);
    } else {
        Loaded input = load_part(config, config.input_paths.front());
        std::vector<std::pair<std::string, std::size_t>> inputs{
            {input.data.source_id, input.data.n_rows}};
        std::string head = header(config, inputs);

        switch (config.command) {
            case Command::percentize: {
                PercentizedDataset percentized = percentize_dataset(input.data, input.specs);
                report = (config.format == OutputFormat::table)
                             ? percentized_table(percentized, options)
                             : head + render_percentized_text(percentized, options) +
                                   anchor_warnings(input.data, input.specs);
                break;
            }
            case Command::regress:
            case Command::compare_importance:
                report = run_regress(config, input, options, head);
                break;
            case Command::compare_impact:
                report = run_impact(config, input, options, head);
                break;
            case Command::percent_diff:
                report = run_percent_diff(config, input, options, head);
                break;
            case Command::mediate:
                report = run_mediate(config, input, options, head);
                break;
            case Command::anchors_suggest:
                report = run_suggest(config, input, options, head);
                break;
            case Command::pool:
                break;  // handled above
        }
    }

    write_atomic(config.output_path, report);
    return 0;
}

}  // namespace pscale
