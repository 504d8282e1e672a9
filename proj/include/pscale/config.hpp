#pragma once

#include <string>
#include <vector>

#include "pscale/scale.hpp"

namespace pscale {

enum class Command {
    percentize,
    regress,
    compare_importance,
    compare_impact,
    percent_diff,
    pool,
    mediate,
    anchors_suggest,
};

Command parse_command(const std::string& name);  // throws ConfigError
std::string_view command_name(Command command);

enum class OutputFormat { text, table };

struct AnalysisConfig {
    Command command = Command::regress;
    std::vector<std::string> input_paths;
    std::string output_path;
    OutputFormat format = OutputFormat::text;
    char delimiter = ',';
    int coefficient_precision = 4;
    int percent_precision = 1;
    std::vector<VariableSpec> specs;  // may include part-scoped overrides
    std::string impact_iv;            // [analysis] iv = ...
};

// Reads variable declarations from the sectioned config file:
//
//   [analysis]
//   iv = age
//
//   [variable age]
//   role = independent        # dependent | independent | mediator | control
//   kind = numerical          # numerical | binary | nominal
//   min = 0                   # conceptual minimum (numerical)
//   max = 100                 # conceptual maximum (numerical)
//   target = 0-1              # 0-1 | 0-100 | -1-1 | "lo..hi"
//   part = y1993              # optional: only for the input with this label
//
//   [variable city]
//   role = control
//   kind = nominal
//   categories = urban, suburban, rural
//   reference = urban
//
// Populates specs and impact_iv on the given config. Unknown keys are errors.
void load_config_file(const std::string& path, AnalysisConfig& config);

// Command-level validation: inputs present, exactly one dependent variable
// for regress/mediate, a binary IV for percent-diff, and so on. Throws
// ConfigError with a diagnostic.
void validate(const AnalysisConfig& config);

// Specs effective for one input part: part-scoped entries override the
// unscoped entry of the same variable; entries scoped to other parts drop.
std::vector<VariableSpec> specs_for_part(std::span<const VariableSpec> specs,
                                         const std::string& part);

}  // namespace pscale
