#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pscale/run.hpp"

namespace {

struct CommandHelp {
    const char* name;
    const char* description;
};

const CommandHelp kCommands[] = {
    {"percentize", "transform declared variables onto percentage scales"},
    {"regress", "fit b_p coefficients for the dependent variable"},
    {"compare-importance", "rank predictors of one DV by |b_p|"},
    {"compare-impact", "rank DVs by the b_p of one shared IV"},
    {"percent-diff", "treatment-control mean difference on the percentized DV"},
    {"pool", "percentize parts with their own anchors and concatenate"},
    {"mediate", "serial-mediation path decomposition on percentized variables"},
    {"anchors-suggest", "propose round-number conceptual anchors to confirm"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"percentage-scale analysis: percentize variables, estimate b_p "
                 "coefficients, and compare effects on equitable units"};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    std::string config_path;
    std::string out_path;
    std::string format = "text";
    std::string delimiter = ",";
    int precision = 4;

    for (const auto& [name, description] : kCommands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "variable declarations file");
        sub->add_option("--input", inputs, "input data file (repeat for pooling)")
            ->required();
        sub->add_option("--out", out_path, "output report path")->required();
        sub->add_option("--format", format, "text | table")
            ->check(CLI::IsMember({"text", "table"}));
        sub->add_option("--delimiter", delimiter, "input/output field delimiter");
        sub->add_option("--precision", precision, "coefficient decimals")
            ->check(CLI::Range(0, 12));
    }

    CLI11_PARSE(app, argc, argv);

    try {
        pscale::AnalysisConfig config;
        config.command = pscale::parse_command(app.get_subcommands().front()->get_name());
        config.input_paths = inputs;
        config.output_path = out_path;
        config.format = (format == "table") ? pscale::OutputFormat::table
                                            : pscale::OutputFormat::text;
        if (delimiter.size() != 1) {
            throw pscale::ConfigError("delimiter must be a single character");
        }
        config.delimiter = delimiter[0];
        config.coefficient_precision = precision;
        if (!config_path.empty()) pscale::load_config_file(config_path, config);

        return pscale::run(config);
    } catch (const pscale::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
