#pragma once

#include <span>
#include <string>

#include "pscale/dataset.hpp"
#include "pscale/scale.hpp"

namespace pscale {

// Loads a delimited text file with a header row. Cells are numeric,
// categorical text, or missing ("" / "NA"). Columns declared nominal in the
// specs load as categorical regardless of content; otherwise a column must
// be all-numeric or all-text (a lone text cell in a numeric column is a
// ParseError naming the cell). Double quotes protect embedded delimiters.
Dataset load_csv(const std::string& path, std::span<const VariableSpec> specs = {},
                 char delimiter = ',');

}  // namespace pscale
