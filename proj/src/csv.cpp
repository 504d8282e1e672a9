#include "pscale/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pscale {

namespace {

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_missing_marker(const std::string& cell) { return cell.empty() || cell == "NA"; }

bool parse_number(const std::string& cell, double& out) {
    // std::from_chars: locale-independent, full-cell match required. "inf"
    // and "nan" spellings count as text, not numbers.
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

// Splits one record honoring double quotes ("" escapes a quote).
std::vector<std::string> split_record(const std::string& line, char delimiter,
                                      std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delimiter) {
            cells.push_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    if (quoted) {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quote");
    }
    cells.push_back(trim(cell));
    return cells;
}

}  // namespace

Dataset load_csv(const std::string& path, std::span<const VariableSpec> specs,
                 char delimiter) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();

    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(buffer, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        rows.push_back(split_record(line, delimiter, line_no));
    }
    if (rows.empty()) throw EmptyFile("'" + path + "' has no header row");

    const auto& header = rows.front();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size()) {
            throw ParseError("'" + path + "' row " + std::to_string(r) + ": " +
                             std::to_string(rows[r].size()) + " cells, header has " +
                             std::to_string(header.size()));
        }
    }

    auto declared_nominal = [&](const std::string& name) {
        return std::any_of(specs.begin(), specs.end(), [&](const VariableSpec& s) {
            return s.name == name && s.kind == Kind::nominal;
        });
    };

    Dataset data;
    data.n_rows = rows.size() - 1;
    data.source_id = std::filesystem::path(path).stem().string();

    for (std::size_t col = 0; col < header.size(); ++col) {
        Column column;
        column.name = header[col];

        std::vector<double> numbers;
        std::vector<std::string> labels;
        std::size_t numeric_cells = 0;
        std::size_t first_text_row = 0;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const std::string& cell = rows[r][col];
            if (is_missing_marker(cell)) {
                numbers.push_back(missing_value());
                labels.push_back("");
                continue;
            }
            double value = 0.0;
            if (parse_number(cell, value)) {
                ++numeric_cells;
                numbers.push_back(value);
            } else if (first_text_row == 0) {
                first_text_row = r;
            }
            labels.push_back(cell);
        }

        bool nominal = declared_nominal(column.name);
        if (!nominal && numeric_cells > 0 && first_text_row > 0) {
            throw ParseError("'" + path + "' row " + std::to_string(first_text_row) +
                             ", column '" + column.name + "': cell '" +
                             rows[first_text_row][col] + "' is not numeric");
        }

        // All-missing columns stay numeric; all-text ones load as categorical.
        if (!nominal && first_text_row == 0) {
            column.data = std::move(numbers);
        } else {
            column.data = std::move(labels);
        }
        data.columns.push_back(std::move(column));
    }
    return data;
}

}  // namespace pscale
