#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cfdkit/merit_order.hpp"

namespace cfdkit {

/// How the reference fleet of financial contracts is formed: the plant's
/// whole zone fleet, the zone fleet without the plant itself, or one named
/// plant acting as the index.
enum class FinancialReferenceMode { IncludeSelf, ExcludeSelf, NamedPlant };

/// One weather year as referenced from the study file; the series are loaded
/// separately with load_weather.
struct WeatherSource {
  std::string name;
  std::filesystem::path capacity_factors;
  std::filesystem::path demand;
};

/// A fully parsed study definition.
struct StudyConfig {
  MarketModel model;
  std::vector<WeatherSource> weather_sources;
  std::vector<std::string> contracted_plants;
  bool drop_last_cov = true;
  std::vector<std::string> drop_weather_years;
  FinancialReferenceMode financial_reference = FinancialReferenceMode::IncludeSelf;
  std::string financial_reference_plant;  // NamedPlant mode only
  std::filesystem::path output_dir = "out";
  std::filesystem::path base_dir;  // directory of the study file
};

/// Parse and validate a study file. The format is line-based "key = value"
/// with '#' comments; lists are comma-separated. Unknown or duplicate keys,
/// missing referenced files and inconsistent entries raise ConfigError.
/// Relative data paths resolve against the study file's directory.
StudyConfig load_study_config(const std::filesystem::path& path);

/// Check a list of weather year names against the configured variants and
/// record them as dropped. Unknown names, or dropping every configured year,
/// raise ConfigError.
void apply_weather_drops(StudyConfig& config,
                         const std::vector<std::string>& years);

/// Load the weather CSV files of every source: capacity factors per plant
/// (validated to lie in [0, 1] and cover exactly the configured plants) and
/// demand per zone (non-negative, covering exactly the configured zones).
std::vector<WeatherVariant> load_weather(const StudyConfig& config);

}  // namespace cfdkit
