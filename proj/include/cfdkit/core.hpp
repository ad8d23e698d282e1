#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfdkit {

// Error taxonomy used across the toolkit. The command line maps ConfigError
// to exit code 2 and DataError / DomainError to exit code 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A requested quantity is mathematically undefined for the given inputs
// (zero expected generation, zero cost, zero demand, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Hourly index grid shared by every series of a scenario.
struct TimeGrid {
  std::size_t hours = 8760;
  double hour_duration = 1.0;  // fixed at 1 h; energy = power * hour_duration
};

struct BiddingZone {
  std::string id;    // short code, e.g. "DK"
  std::string name;  // optional display name
};

/// Cost assumptions of a wind plant: C = c * sum_t q_t + A * M * Q
/// with variable cost c, annuity factor A and specific invest cost M.
struct CostParameters {
  double variable_cost = 0.0;   // c, EUR/MWh
  double annuity_factor = 0.0;  // A, 1/yr
  double invest_cost = 0.0;     // M, EUR/MW
};

/// Annuity factor for an interest rate and lifetime in years:
/// r / (1 - (1+r)^-n), extended to 1/n at zero interest.
double annuity_factor(double interest_rate, int lifetime_years);

/// Turbine design archetypes. HighFlh maximises full-load hours, HighMv
/// shifts output towards hours of scarce supply and high prices.
enum class ProfileLabel { Reference, HighFlh, HighMv, Other };

std::string to_string(ProfileLabel label);
ProfileLabel parse_profile_label(const std::string& text);

/// A wind plant (or plant cluster) in one bidding zone. capacity_factors may
/// be empty when the realised generation lives on a Scenario instead.
struct PlantProfile {
  std::string id;
  std::string zone;
  double capacity = 0.0;                 // nominal Q, MW
  std::vector<double> capacity_factors;  // f_t in [0,1], optional
  CostParameters costs;
  ProfileLabel label = ProfileLabel::Other;
};

/// All wind plants of one bidding zone.
struct Fleet {
  std::string zone;
  std::vector<PlantProfile> plants;

  double total_capacity() const;
  /// Capacity shares w_i = Q_i / sum_j Q_j; sums to one.
  std::vector<double> weights() const;
  const PlantProfile& find(const std::string& plant_id) const;
  bool contains(const std::string& plant_id) const;
};

/// One realised market outcome: hourly prices and demand per zone, hourly
/// generation and installed capacity per plant, all on a common grid.
struct Scenario {
  std::string id;
  TimeGrid grid;
  std::map<std::string, std::vector<double>> prices;      // zone -> EUR/MWh
  std::map<std::string, std::vector<double>> demand;      // zone -> MW
  std::map<std::string, std::vector<double>> generation;  // plant -> MWh
  std::map<std::string, double> plant_capacity;           // plant -> MW
  std::map<std::string, std::string> metadata;            // free-form tags

  // Checked accessors: missing keys or series of the wrong length raise
  // DataError naming the scenario and the offending key.
  const std::vector<double>& prices_for(const std::string& zone) const;
  const std::vector<double>& demand_for(const std::string& zone) const;
  const std::vector<double>& generation_for(const std::string& plant_id) const;
  double capacity_for(const std::string& plant_id) const;
};

/// Weighted set of scenarios; weights are probabilities summing to one.
struct ScenarioEnsemble {
  std::vector<Scenario> scenarios;
  std::vector<double> weights;

  static ScenarioEnsemble uniform(std::vector<Scenario> scenarios);
  std::size_t size() const { return scenarios.size(); }
  /// Raises DataError unless weights match scenarios and sum to one.
  void validate() const;
};

enum class CfdType { Basic, TwoWay, Financial };

std::string to_string(CfdType type);
CfdType parse_cfd_type(const std::string& text);
/// Label including the uncontracted baseline: nullopt -> "none".
std::string cfd_label(const std::optional<CfdType>& type);
/// Strike unit: EUR/MWh for Basic and TwoWay, EUR/MW for Financial.
std::string strike_unit(CfdType type);

// ---- per-scenario plant and fleet metrics ----------------------------------
//
// Generation q_t and capacity Q are read from the scenario by plant id, so a
// plant referenced here must carry series in that scenario. Ratios extend to
// zero when the plant (or fleet) generated nothing.

/// sum_t q_t, MWh
double total_generation(const PlantProfile& plant, const Scenario& scenario);

/// c * sum_t q_t + A * M * Q, EUR
double annual_cost(const PlantProfile& plant, const Scenario& scenario);

/// Average cost per unit of energy: annual_cost / total_generation, EUR/MWh.
double lcoe(const PlantProfile& plant, const Scenario& scenario);

/// Generation-weighted average price earned by one plant, EUR/MWh.
double market_value_plant(const PlantProfile& plant, const Scenario& scenario);

/// Generation-weighted average price earned by a whole fleet, EUR/MWh.
double market_value_zone(const Fleet& fleet, const Scenario& scenario);

/// Market revenue per unit of installed capacity, EUR/MW.
double revenue_per_capacity_plant(const PlantProfile& plant,
                                  const Scenario& scenario);

/// Fleet market revenue per unit of fleet capacity, EUR/MW.
double revenue_per_capacity_zone(const Fleet& fleet, const Scenario& scenario);

}  // namespace cfdkit
