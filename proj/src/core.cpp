#include "cfdkit/core.hpp"

#include <cmath>
#include <numeric>

namespace cfdkit {

double annuity_factor(double interest_rate, int lifetime_years) {
  if (lifetime_years <= 0) {
    throw ConfigError("annuity factor: lifetime must be positive, got " +
                      std::to_string(lifetime_years));
  }
  if (interest_rate < 0.0) {
    throw ConfigError("annuity factor: interest rate must be non-negative");
  }
  if (interest_rate == 0.0) {
    return 1.0 / static_cast<double>(lifetime_years);
  }
  const double r = interest_rate;
  return r / (1.0 - std::pow(1.0 + r, -lifetime_years));
}

std::string to_string(ProfileLabel label) {
  switch (label) {
    case ProfileLabel::Reference:
      return "reference";
    case ProfileLabel::HighFlh:
      return "high_flh";
    case ProfileLabel::HighMv:
      return "high_mv";
    case ProfileLabel::Other:
      return "other";
  }
  throw DomainError("unknown profile label");
}

ProfileLabel parse_profile_label(const std::string& text) {
  if (text == "reference") return ProfileLabel::Reference;
  if (text == "high_flh") return ProfileLabel::HighFlh;
  if (text == "high_mv") return ProfileLabel::HighMv;
  if (text == "other") return ProfileLabel::Other;
  throw ConfigError("unknown profile label '" + text +
                    "' (expected reference, high_flh, high_mv or other)");
}

double Fleet::total_capacity() const {
  double total = 0.0;
  for (const auto& plant : plants) total += plant.capacity;
  return total;
}

std::vector<double> Fleet::weights() const {
  const double total = total_capacity();
  if (total <= 0.0) {
    throw DomainError("fleet '" + zone + "' has no installed capacity");
  }
  std::vector<double> shares;
  shares.reserve(plants.size());
  for (const auto& plant : plants) shares.push_back(plant.capacity / total);
  return shares;
}

const PlantProfile& Fleet::find(const std::string& plant_id) const {
  for (const auto& plant : plants) {
    if (plant.id == plant_id) return plant;
  }
  throw DataError("fleet '" + zone + "' has no plant '" + plant_id + "'");
}

bool Fleet::contains(const std::string& plant_id) const {
  for (const auto& plant : plants) {
    if (plant.id == plant_id) return true;
  }
  return false;
}

namespace {

const std::vector<double>& checked_series(
    const std::map<std::string, std::vector<double>>& series,
    const std::string& key, const char* kind, const Scenario& scenario) {
  auto it = series.find(key);
  if (it == series.end()) {
    throw DataError("scenario '" + scenario.id + "': no " + kind +
                    " series for '" + key + "'");
  }
  if (it->second.size() != scenario.grid.hours) {
    throw DataError("scenario '" + scenario.id + "': " + kind + " series '" +
                    key + "' has " + std::to_string(it->second.size()) +
                    " hours, grid has " + std::to_string(scenario.grid.hours));
  }
  return it->second;
}

}  // namespace

const std::vector<double>& Scenario::prices_for(const std::string& zone) const {
  return checked_series(prices, zone, "price", *this);
}

const std::vector<double>& Scenario::demand_for(const std::string& zone) const {
  return checked_series(demand, zone, "demand", *this);
}

const std::vector<double>& Scenario::generation_for(
    const std::string& plant_id) const {
  return checked_series(generation, plant_id, "generation", *this);
}

double Scenario::capacity_for(const std::string& plant_id) const {
  auto it = plant_capacity.find(plant_id);
  if (it == plant_capacity.end()) {
    throw DataError("scenario '" + id + "': no capacity entry for plant '" +
                    plant_id + "'");
  }
  return it->second;
}

ScenarioEnsemble ScenarioEnsemble::uniform(std::vector<Scenario> scenarios) {
  if (scenarios.empty()) {
    throw DataError("scenario ensemble must not be empty");
  }
  ScenarioEnsemble ensemble;
  ensemble.weights.assign(scenarios.size(), 1.0 / scenarios.size());
  ensemble.scenarios = std::move(scenarios);
  return ensemble;
}

void ScenarioEnsemble::validate() const {
  if (scenarios.empty()) {
    throw DataError("scenario ensemble must not be empty");
  }
  if (weights.size() != scenarios.size()) {
    throw DataError("scenario ensemble has " +
                    std::to_string(scenarios.size()) + " scenarios but " +
                    std::to_string(weights.size()) + " weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DataError("scenario weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw DataError("scenario weights sum to " + std::to_string(total) +
                    ", expected 1");
  }
}

std::string to_string(CfdType type) {
  switch (type) {
    case CfdType::Basic:
      return "basic";
    case CfdType::TwoWay:
      return "2way";
    case CfdType::Financial:
      return "fin";
  }
  throw DomainError("unknown CfD type");
}

CfdType parse_cfd_type(const std::string& text) {
  if (text == "basic") return CfdType::Basic;
  if (text == "2way") return CfdType::TwoWay;
  if (text == "fin") return CfdType::Financial;
  throw ConfigError("unknown CfD type '" + text +
                    "' (expected basic, 2way or fin)");
}

std::string cfd_label(const std::optional<CfdType>& type) {
  return type ? to_string(*type) : std::string("none");
}

std::string strike_unit(CfdType type) {
  return type == CfdType::Financial ? "EUR/MW" : "EUR/MWh";
}

double total_generation(const PlantProfile& plant, const Scenario& scenario) {
  const auto& q = scenario.generation_for(plant.id);
  return std::accumulate(q.begin(), q.end(), 0.0);
}

double annual_cost(const PlantProfile& plant, const Scenario& scenario) {
  const double capacity = scenario.capacity_for(plant.id);
  return plant.costs.variable_cost * total_generation(plant, scenario) +
         plant.costs.annuity_factor * plant.costs.invest_cost * capacity;
}

double lcoe(const PlantProfile& plant, const Scenario& scenario) {
  const double energy = total_generation(plant, scenario);
  if (energy == 0.0) return 0.0;
  return annual_cost(plant, scenario) / energy;
}

namespace {

// sum_t q_t * p_t for one plant.
double market_revenue(const PlantProfile& plant, const Scenario& scenario) {
  const auto& q = scenario.generation_for(plant.id);
  const auto& p = scenario.prices_for(plant.zone);
  double revenue = 0.0;
  for (std::size_t t = 0; t < q.size(); ++t) revenue += q[t] * p[t];
  return revenue;
}

}  // namespace

double market_value_plant(const PlantProfile& plant, const Scenario& scenario) {
  const double energy = total_generation(plant, scenario);
  if (energy == 0.0) return 0.0;
  return market_revenue(plant, scenario) / energy;
}

double market_value_zone(const Fleet& fleet, const Scenario& scenario) {
  double revenue = 0.0;
  double energy = 0.0;
  for (const auto& plant : fleet.plants) {
    revenue += market_revenue(plant, scenario);
    energy += total_generation(plant, scenario);
  }
  if (energy == 0.0) return 0.0;
  return revenue / energy;
}

double revenue_per_capacity_plant(const PlantProfile& plant,
                                  const Scenario& scenario) {
  const double capacity = scenario.capacity_for(plant.id);
  if (capacity == 0.0) return 0.0;
  return market_revenue(plant, scenario) / capacity;
}

double revenue_per_capacity_zone(const Fleet& fleet, const Scenario& scenario) {
  double revenue = 0.0;
  double capacity = 0.0;
  for (const auto& plant : fleet.plants) {
    revenue += market_revenue(plant, scenario);
    capacity += scenario.capacity_for(plant.id);
  }
  if (capacity == 0.0) return 0.0;
  return revenue / capacity;
}

}  // namespace cfdkit
