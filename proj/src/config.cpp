#include "pscale/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace pscale {

Command parse_command(const std::string& name) {
    if (name == "percentize") return Command::percentize;
    if (name == "regress") return Command::regress;
    if (name == "compare-importance") return Command::compare_importance;
    if (name == "compare-impact") return Command::compare_impact;
    if (name == "percent-diff") return Command::percent_diff;
    if (name == "pool") return Command::pool;
    if (name == "mediate") return Command::mediate;
    if (name == "anchors-suggest") return Command::anchors_suggest;
    throw ConfigError("unknown command '" + name + "'");
}

std::string_view command_name(Command command) {
    switch (command) {
        case Command::percentize: return "percentize";
        case Command::regress: return "regress";
        case Command::compare_importance: return "compare-importance";
        case Command::compare_impact: return "compare-impact";
        case Command::percent_diff: return "percent-diff";
        case Command::pool: return "pool";
        case Command::mediate: return "mediate";
        case Command::anchors_suggest: return "anchors-suggest";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, const std::string& where) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(where + ": '" + value + "' is not a number");
    }
    return out;
}

Role parse_role(const std::string& value, const std::string& where) {
    if (value == "dependent") return Role::dependent;
    if (value == "independent") return Role::independent;
    if (value == "mediator") return Role::mediator;
    if (value == "control") return Role::control;
    throw ConfigError(where + ": unknown role '" + value + "'");
}

Kind parse_kind(const std::string& value, const std::string& where) {
    if (value == "numerical") return Kind::numerical;
    if (value == "binary") return Kind::binary;
    if (value == "nominal") return Kind::nominal;
    throw ConfigError(where + ": unknown kind '" + value + "'");
}

std::pair<double, double> parse_target(const std::string& value, const std::string& where) {
    if (value == "0-1") return {0.0, 1.0};
    if (value == "0-100") return {0.0, 100.0};
    if (value == "-1-1") return {-1.0, 1.0};
    std::size_t sep = value.find("..");
    if (sep != std::string::npos) {
        double lo = parse_double(trim(value.substr(0, sep)), where);
        double hi = parse_double(trim(value.substr(sep + 2)), where);
        return {lo, hi};
    }
    throw ConfigError(where + ": target '" + value + "' is not 0-1, 0-100, -1-1 or lo..hi");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string::npos) comma = value.size();
        std::string item = trim(value.substr(start, comma - start));
        if (!item.empty()) items.push_back(item);
        start = comma + 1;
    }
    return items;
}

// One [variable ...] section while it is being read; folded into a
// VariableSpec when the section closes.
struct PendingVariable {
    std::string name;
    VariableSpec spec;
    bool has_min = false, has_max = false;
    double min = 0.0, max = 0.0;
    std::pair<double, double> target{0.0, 1.0};
};

void finish(PendingVariable& pending, std::vector<VariableSpec>& specs,
            const std::string& path) {
    if (pending.name.empty()) return;
    if (pending.has_min != pending.has_max) {
        throw ConfigError(path + ": variable '" + pending.name +
                          "' declares only one of min/max");
    }
    if (pending.has_min) {
        ScaleAnchor anchor{pending.min, pending.max, pending.target.first,
                           pending.target.second, Provenance::declared};
        require_valid(anchor);
        pending.spec.anchor = anchor;
    }
    require_valid(pending.spec);
    for (const auto& existing : specs) {
        if (existing.name == pending.spec.name && existing.part == pending.spec.part) {
            throw ConfigError(path + ": duplicate declaration of variable '" +
                              pending.spec.name + "'");
        }
    }
    specs.push_back(pending.spec);
    pending = PendingVariable{};
}

}  // namespace

void load_config_file(const std::string& path, AnalysisConfig& config) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open config '" + path + "'");

    enum class Section { none, analysis, variable };
    Section section = Section::none;
    PendingVariable pending;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        std::string where = path + ":" + std::to_string(line_no);

        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError(where + ": unterminated section");
            finish(pending, config.specs, path);
            std::string header = trim(text.substr(1, text.size() - 2));
            if (header == "analysis") {
                section = Section::analysis;
            } else if (header.rfind("variable ", 0) == 0) {
                section = Section::variable;
                pending.name = trim(header.substr(9));
                if (pending.name.empty()) throw ConfigError(where + ": variable without a name");
                pending.spec.name = pending.name;
            } else {
                throw ConfigError(where + ": unknown section '" + header + "'");
            }
            continue;
        }

        std::size_t eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));

        if (section == Section::analysis) {
            if (key == "iv") {
                config.impact_iv = value;
            } else {
                throw ConfigError(where + ": unknown analysis key '" + key + "'");
            }
        } else if (section == Section::variable) {
            if (key == "role") {
                pending.spec.role = parse_role(value, where);
            } else if (key == "kind") {
                pending.spec.kind = parse_kind(value, where);
            } else if (key == "min") {
                pending.min = parse_double(value, where);
                pending.has_min = true;
            } else if (key == "max") {
                pending.max = parse_double(value, where);
                pending.has_max = true;
            } else if (key == "target") {
                pending.target = parse_target(value, where);
            } else if (key == "categories") {
                pending.spec.categories = split_list(value);
            } else if (key == "reference") {
                pending.spec.reference_category = value;
            } else if (key == "part") {
                pending.spec.part = value;
            } else {
                throw ConfigError(where + ": unknown variable key '" + key + "'");
            }
        } else {
            throw ConfigError(where + ": key outside any section");
        }
    }
    finish(pending, config.specs, path);
}

std::vector<VariableSpec> specs_for_part(std::span<const VariableSpec> specs,
                                         const std::string& part) {
    std::vector<VariableSpec> effective;
    for (const auto& spec : specs) {
        if (!spec.part.empty()) continue;
        // A part-scoped declaration overrides the unscoped one wholesale.
        auto scoped = std::find_if(specs.begin(), specs.end(), [&](const VariableSpec& s) {
            return s.name == spec.name && s.part == part;
        });
        if (scoped != specs.end()) {
            VariableSpec merged = *scoped;
            effective.push_back(std::move(merged));
        } else {
            effective.push_back(spec);
        }
    }
    return effective;
}

namespace {

std::size_t count_role(std::span<const VariableSpec> specs, Role role) {
    return static_cast<std::size_t>(
        std::count_if(specs.begin(), specs.end(), [&](const VariableSpec& s) {
            return s.part.empty() && s.role == role;
        }));
}

}  // namespace

void validate(const AnalysisConfig& config) {
    if (config.output_path.empty()) throw ConfigError("no output path given");
    if (config.input_paths.empty()) throw ConfigError("no input given");
    if (config.command == Command::pool) {
        if (config.input_paths.size() < 2) {
            throw ConfigError("pool needs at least 2 inputs");
        }
    } else if (config.input_paths.size() != 1) {
        throw ConfigError(std::string(command_name(config.command)) +
                          " takes exactly one input");
    }

    // Part-scoped entries must override a variable that exists unscoped.
    for (const auto& spec : config.specs) {
        if (spec.part.empty()) continue;
        bool known = std::any_of(config.specs.begin(), config.specs.end(),
                                 [&](const VariableSpec& s) {
                                     return s.part.empty() && s.name == spec.name;
                                 });
        if (!known) {
            throw ConfigError("part-scoped variable '" + spec.name +
                              "' has no unscoped declaration");
        }
    }

    std::size_t dependents = count_role(config.specs, Role::dependent);
    std::size_t independents = count_role(config.specs, Role::independent);
    std::size_t mediators = count_role(config.specs, Role::mediator);

    switch (config.command) {
        case Command::regress:
        case Command::compare_importance:
            if (dependents != 1) {
                throw ConfigError("exactly one dependent variable required, got " +
                                  std::to_string(dependents));
            }
            if (independents + count_role(config.specs, Role::control) == 0) {
                throw ConfigError("no predictors declared");
            }
            break;
        case Command::mediate:
            if (dependents != 1) {
                throw ConfigError("exactly one dependent variable required, got " +
                                  std::to_string(dependents));
            }
            if (mediators == 0) throw ConfigError("mediate needs at least one mediator");
            if (config.impact_iv.empty() && independents != 1) {
                throw ConfigError("mediate needs [analysis] iv or exactly one independent");
            }
            break;
        case Command::compare_impact:
            if (dependents < 2) {
                throw ConfigError("compare-impact needs at least 2 dependent variables");
            }
            if (config.impact_iv.empty() && independents != 1) {
                throw ConfigError("compare-impact needs [analysis] iv or exactly one independent");
            }
            break;
        case Command::percent_diff: {
            if (dependents != 1) {
                throw ConfigError("exactly one dependent variable required, got " +
                                  std::to_string(dependents));
            }
            auto binary_iv = std::count_if(
                config.specs.begin(), config.specs.end(), [](const VariableSpec& s) {
                    return s.part.empty() && s.role == Role::independent &&
                           s.kind == Kind::binary;
                });
            if (binary_iv != 1 || independents != 1) {
                throw ConfigError("percent-diff needs exactly one binary independent variable");
            }
            break;
        }
        case Command::percentize:
        case Command::pool:
            if (config.specs.empty()) throw ConfigError("no variables declared");
            break;
        case Command::anchors_suggest:
            break;  // works with or without declarations
    }

    // Named IV must be declared.
    if (!config.impact_iv.empty()) {
        bool declared = std::any_of(config.specs.begin(), config.specs.end(),
                                    [&](const VariableSpec& s) {
                                        return s.part.empty() && s.name == config.impact_iv;
                                    });
        if (!declared) {
            throw ConfigError("iv '" + config.impact_iv + "' is not a declared variable");
        }
    }
}

}  // namespace pscale
