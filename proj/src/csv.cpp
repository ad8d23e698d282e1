#include "cfdkit/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <system_error>

namespace cfdkit {

std::string format_double(double value) {
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) {
    throw DataError("failed to format a number");
  }
  return std::string(buffer, end);
}

double parse_double(std::string_view text, const std::string& context) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw DataError(context + ": '" + std::string(text) + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw DataError(context + ": '" + std::string(text) + "' is not finite");
  }
  return value;
}

std::size_t parse_index(std::string_view text, const std::string& context) {
  std::size_t value = 0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw DataError(context + ": '" + std::string(text) +
                    "' is not a non-negative integer");
  }
  return value;
}

namespace {

std::vector<std::string> split_line(const std::string& line,
                                    const std::string& context) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string field = line.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (field.empty()) {
      throw DataError(context + ": empty field");
    }
    fields.push_back(field);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::vector<std::vector<std::string>> read_csv_rows(
    const std::filesystem::path& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw DataError("cannot open '" + path.string() + "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(stream, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(
        split_line(line, path.string() + ":" + std::to_string(number)));
  }
  if (rows.empty()) {
    throw DataError("'" + path.string() + "' is empty");
  }
  return rows;
}

void write_csv_rows(const std::filesystem::path& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::ofstream stream(path);
  if (!stream) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  auto write_row = [&stream](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) stream << ',';
      stream << fields[i];
    }
    stream << '\n';
  };
  write_row(header);
  for (const auto& row : rows) write_row(row);
  if (!stream) {
    throw DataError("failed while writing '" + path.string() + "'");
  }
}

TimeseriesData read_timeseries_csv(const std::filesystem::path& path,
                                   std::size_t expected_hours) {
  const auto rows = read_csv_rows(path);
  const auto& header = rows.front();
  if (header.size() != 3 || header[0] != "hour" || header[2] != "value") {
    throw DataError("'" + path.string() +
                    "': expected header 'hour,<key>,value'");
  }
  if (expected_hours == 0) {
    throw DataError("'" + path.string() + "': expected hours must be positive");
  }
  TimeseriesData data;
  data.key_column = header[1];
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string context = path.string() + " row " + std::to_string(r + 1);
    if (row.size() != 3) {
      throw DataError(context + ": expected 3 fields, got " +
                      std::to_string(row.size()));
    }
    const std::size_t hour = parse_index(row[0], context + " hour");
    const std::string& key = row[1];
    const double value = parse_double(row[2], context + " value");
    if (hour >= expected_hours) {
      throw DataError(context + ": hour " + std::to_string(hour) +
                      " outside grid of " + std::to_string(expected_hours) +
                      " hours for '" + key + "'");
    }
    auto& series = data.series[key];
    if (series.empty()) {
      series.assign(expected_hours, std::numeric_limits<double>::quiet_NaN());
    }
    if (!std::isnan(series[hour])) {
      throw DataError(context + ": duplicate hour " + std::to_string(hour) +
                      " for '" + key + "'");
    }
    series[hour] = value;
  }
  if (data.series.empty()) {
    throw DataError("'" + path.string() + "' has no data rows");
  }
  for (const auto& [key, series] : data.series) {
    for (std::size_t t = 0; t < series.size(); ++t) {
      if (std::isnan(series[t])) {
        throw DataError("'" + path.string() + "': missing hour " +
                        std::to_string(t) + " for '" + key + "'");
      }
    }
  }
  return data;
}

void write_timeseries_csv(
    const std::filesystem::path& path, const std::string& key_column,
    const std::map<std::string, std::vector<double>>& series) {
  std::ofstream stream(path);
  if (!stream) {
    throw DataError("cannot write '" + path.string() + "'");
  }
  stream << "hour," << key_column << ",value\n";
  for (const auto& [key, values] : series) {
    for (std::size_t t = 0; t < values.size(); ++t) {
      stream << t << ',' << key << ',' << format_double(values[t]) << '\n';
    }
  }
  if (!stream) {
    throw DataError("failed while writing '" + path.string() + "'");
  }
}

}  // namespace cfdkit
