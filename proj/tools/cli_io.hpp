#pragma once

// File plumbing for the command-line tool: CSV ingestion and atomic writes.

#include <filesystem>
#include <string>
#include <vector>

#include "elastic/fnspace.hpp"

namespace elastic::cli {

struct Table {
    std::vector<std::vector<double>> rows;
};

/// Numeric CSV with an optional header line. Every data row must have at
/// least `min_columns` fields; errors carry "path:line: ...".
Table read_table(const std::filesystem::path& path, std::size_t min_columns);

/// A `t,value` function file.
SampledFunction read_function(const std::filesystem::path& path, bool rescale_domain);

/// An SRSF file as written by write_srsf (midpoint,value,t_left,t_right).
CellFunction read_srsf(const std::filesystem::path& path);

std::string format_double(double x);

/// Writes to a sibling temporary and renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string function_csv(const SampledFunction& f, const char* value_name = "value");
std::string srsf_csv(const CellFunction& q);

}  // namespace elastic::cli
