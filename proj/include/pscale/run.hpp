#pragma once

#include "pscale/config.hpp"

namespace pscale {

// Validates the config, dispatches to the matching analysis, and writes the
// report atomically. Returns 0 on success; throws pscale::Error otherwise
// (the CLI maps error codes to exit statuses).
int run(const AnalysisConfig& config);

}  // namespace pscale
