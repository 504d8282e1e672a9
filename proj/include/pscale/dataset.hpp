#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pscale/scale.hpp"

namespace pscale {

// Missing numeric cells are NaN; missing categorical cells are "".
inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return v != v; }

struct Column {
    std::string name;
    std::variant<std::vector<double>, std::vector<std::string>> data;

    bool is_numeric() const { return data.index() == 0; }
    const std::vector<double>& numeric() const { return std::get<0>(data); }
    const std::vector<std::string>& labels() const { return std::get<1>(data); }
    std::size_t size() const {
        return is_numeric() ? numeric().size() : labels().size();
    }
};

// Rectangular table of raw (untransformed) observations.
struct Dataset {
    std::vector<Column> columns;
    std::size_t n_rows = 0;
    std::string source_id;

    const Column* find(std::string_view name) const {
        for (const auto& c : columns)
            if (c.name == name) return &c;
        return nullptr;
    }
};

enum class TransformKind {
    percent_scale,  // (v - min) / (max - min) * 100
    min_max,        // general affine rescale onto a target range
    conceptual,     // anchored percentization onto the anchor's target range
    dummy,          // 0-or-1 indicator coding
};

std::string_view transform_kind_name(TransformKind kind);

struct TransformRecord {
    std::string column;  // source column name
    TransformKind kind = TransformKind::conceptual;
    ScaleAnchor anchor;                      // for the numeric transforms
    std::vector<std::string> dummy_columns;  // for dummy coding
    std::string reference_category;          // for dummy coding of nominals
    std::string part;                        // source label when pooled
};

struct PercentizedColumn {
    std::string name;
    std::vector<double> values;  // NaN = missing
    ScaleAnchor anchor;          // implied {0,1} -> {0,1} for dummies
    bool is_dummy = false;
    std::string source_column;  // nominal variable behind a dummy, else = name
    std::string category;       // dummy's category label, else empty
};

// Percentized table: every column numeric, every transform on record. The
// transform log plus the anchors are sufficient to reconstruct raw values.
struct PercentizedDataset {
    std::vector<PercentizedColumn> columns;
    std::size_t n_rows = 0;
    std::string source_id;
    std::vector<TransformRecord> transform_log;

    const PercentizedColumn* find(std::string_view name) const {
        for (const auto& c : columns)
            if (c.name == name) return &c;
        return nullptr;
    }
};

}  // namespace pscale
