#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cfdkit/core.hpp"

namespace cfdkit {

/// Shortest decimal representation that parses back to the identical double,
/// so written files are byte-deterministic and lossless.
std::string format_double(double value);

/// Strict double parser: the whole field must be a finite number. `context`
/// names the field in error messages.
double parse_double(std::string_view text, const std::string& context);

/// Strict non-negative integer parser.
std::size_t parse_index(std::string_view text, const std::string& context);

/// Long-format hourly series file with header "hour,<key>,value": one row
/// per (hour, key), hours dense from 0 to hours-1 for every key.
struct TimeseriesData {
  std::string key_column;
  std::map<std::string, std::vector<double>> series;
};

/// Read and validate a series file. Missing hours, duplicate rows,
/// non-numeric or non-finite values raise DataError naming the hour and key.
TimeseriesData read_timeseries_csv(const std::filesystem::path& path,
                                   std::size_t expected_hours);

/// Write series in long format, keys in map order, hours ascending.
void write_timeseries_csv(const std::filesystem::path& path,
                          const std::string& key_column,
                          const std::map<std::string, std::vector<double>>& series);

/// Minimal row-oriented CSV: comma-separated, no quoting, first row is the
/// header. Empty fields raise DataError.
std::vector<std::vector<std::string>> read_csv_rows(
    const std::filesystem::path& path);

void write_csv_rows(const std::filesystem::path& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

}  // namespace cfdkit
