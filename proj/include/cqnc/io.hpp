#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cqnc/sweep.hpp"

// Serialization of sweep results (CSV and JSON), the matching loader used for
// diffing, and the column-wise comparator.
//
// Determinism contract: identical results serialize to byte-identical files —
// values are written with 17 significant digits (lossless double round-trip),
// key order is fixed, and no timestamps or environment data are embedded.

namespace cqnc {

enum class EmitFormat { csv, json };

// CSV: one header row (axis name then column names), comma separation,
// %.17g values, every row newline-terminated.
void emit_csv(const SweepResult& result, std::ostream& out);

// JSON: a single document {schema, metadata, axis{name, values}, columns{...},
// flagged_points} with insertion-ordered keys.
void emit_json(const SweepResult& result, std::ostream& out);

// Writes the chosen format to path; throws std::runtime_error naming the path
// on I/O failure.
void emit(const SweepResult& result, EmitFormat format, const std::filesystem::path& path);

// Loaded view of an emitted file, sufficient for comparison.
struct Table {
    std::string axis_name;
    std::vector<double> axis;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;
};

Table to_table(const SweepResult& result);

// Loads a CSV or JSON file emitted by this library (format by extension).
Table load_table(const std::filesystem::path& path);

// Compares shared columns point-by-point with relative deviation
// |a-b| / max(|a|, |b|); requires identical axes.
CompareReport compare_tables(const Table& a, const Table& b, double tolerance);

}  // namespace cqnc
