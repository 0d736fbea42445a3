#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "botreg/dataset.hpp"
#include "botreg/eval.hpp"
#include "botreg/experiment.hpp"

namespace botreg {

struct TableCell {
    double score = 0.0;
    bool starred = false;  // significantly better than the baseline row
    bool bold = false;     // holds the table-wide minimum (ties all bold)

    bool operator==(const TableCell&) const = default;
};

// One metric's grid: a row per algorithm (baseline first), a column per
// feature set. Labels are plain strings so grids from other toolchains can
// be loaded and rendered as-is.
struct ComparisonTable {
    Metric metric = Metric::MAE;
    ViewKind view = ViewKind::AllHumans;
    std::vector<std::string> algorithms;
    std::vector<std::string> feature_sets;
    std::vector<TableCell> cells;  // row-major

    const TableCell& cell(std::size_t row, std::size_t col) const {
        return cells[row * feature_sets.size() + col];
    }
    TableCell& cell(std::size_t row, std::size_t col) {
        return cells[row * feature_sets.size() + col];
    }

    bool operator==(const ComparisonTable&) const = default;
};

// Projects one metric out of an experiment grid: score and significance
// verdict from each cell, bold recomputed over the projected scores.
ComparisonTable build_table(const ExperimentResult& result, Metric metric);

// Recomputes the bold flags: every cell holding the global minimum score.
void mark_bold(ComparisonTable& t);

enum class TableFormat { Markdown, Csv };

// Markdown: a pipe table, scores to two decimals, `*` suffix on starred
// cells, `**..**` around bold ones. CSV: header
// `algorithm,feature_set,score,starred,bold`, one line per cell in row-major
// order, booleans as true/false. Throws EmptyInputError on an empty table.
std::string render(const ComparisonTable& t, TableFormat format);

// Inverse of render(t, Csv) up to two-decimal score quantization. The CSV
// carries no metric or view fields, so the caller restates them.
ComparisonTable parse_table_csv(const std::string& text, Metric metric,
                                ViewKind view);

// Versioned JSON document with the full experiment grid: plan, per-cell
// aggregates, significance tests, and per-fold scores.
std::string experiment_json(const ExperimentResult& result);

}  // namespace botreg
