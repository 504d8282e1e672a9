#pragma once

#include <string>
#include <vector>

#include "pscale/compare.hpp"
#include "pscale/config.hpp"
#include "pscale/dataset.hpp"
#include "pscale/regress.hpp"

namespace pscale {

struct ReportOptions {
    int coefficient_decimals = 4;
    int percent_decimals = 1;
    char delimiter = ',';
};

// Fixed-point rendering with -0 normalized away; the workhorse for every
// number a report emits, so outputs stay byte-identical across runs.
std::string fixed(double value, int decimals);

// Shortest-ish rendering for data cells and anchor bounds ("%.12g"); missing
// values render as "NA".
std::string compact(double value);

// Delimited output with quoting when a cell contains the delimiter or a quote.
class TableWriter {
public:
    explicit TableWriter(char delimiter) : delimiter_(delimiter) {}
    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

private:
    char delimiter_;
    std::string out_;
};

// Write-temp-then-rename, so a report file exists only when fully written.
void write_atomic(const std::string& path, const std::string& content);

std::string render_transform_log(const std::vector<TransformRecord>& log);

std::string render_regress_text(const BpRegressionResult& result,
                                const std::vector<TransformRecord>& log,
                                const ReportOptions& options);
std::string coefficient_table(const BpRegressionResult& result,
                              const ReportOptions& options);

std::string render_comparison_text(const ComparisonReport& report,
                                   const ReportOptions& options);
std::string comparison_table(const ComparisonReport& report,
                             const ReportOptions& options);

std::string render_difference_text(const GroupDifference& diff,
                                   const std::string& dv_name,
                                   const std::vector<TransformRecord>& log,
                                   const ReportOptions& options);
std::string difference_table(const GroupDifference& diff, const std::string& dv_name,
                             const ReportOptions& options);

std::string render_mediation_text(const MediationDecomposition& decomposition,
                                  const std::vector<TransformRecord>& log,
                                  const ReportOptions& options);
std::string mediation_table(const MediationDecomposition& decomposition,
                            const ReportOptions& options);

struct SuggestionBlock {
    std::string variable;
    double observed_min = 0.0;
    double observed_max = 0.0;
    std::vector<AnchorCandidate> candidates;
};

std::string render_suggestions_text(const std::vector<SuggestionBlock>& blocks);
std::string suggestions_table(const std::vector<SuggestionBlock>& blocks,
                              const ReportOptions& options);

std::string render_percentized_text(const PercentizedDataset& data,
                                    const ReportOptions& options);
std::string percentized_table(const PercentizedDataset& data,
                              const ReportOptions& options);

}  // namespace pscale
