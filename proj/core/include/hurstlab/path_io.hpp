#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hurstlab {

// CSV with header `t,<column>`, one row per uniform grid point. fBm paths
// use the column name "value", SDE paths "x". All CSV output in this project
// uses '.' decimals, '\n' line endings and a header row.
void write_path_csv(const std::filesystem::path& file, const std::vector<double>& values,
                    const std::string& column = "value");

// Reads the value column; validates the header (t,value or t,x) and uniform
// t spacing.
std::vector<double> read_path_csv(const std::filesystem::path& file);

// Deterministic shortest-roundtrip double formatting shared by all writers.
std::string format_double(double v);

}  // namespace hurstlab
