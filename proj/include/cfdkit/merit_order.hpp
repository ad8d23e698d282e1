#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfdkit/core.hpp"

namespace cfdkit {

/// A dispatchable generator with resolved marginal cost, bidding into one
/// zone's merit order.
struct DispatchableUnit {
  std::string id;
  std::string zone;
  double capacity = 0.0;       // MW
  double marginal_cost = 0.0;  // EUR/MWh
};

/// Config-level description of a dispatchable unit. Exactly one of
/// marginal_cost (fixed bid) or fuel_efficiency (bid = fuel price divided by
/// efficiency) is set; capacities come from the invest variants.
struct UnitSpec {
  std::string id;
  std::string zone;
  std::optional<double> marginal_cost;
  std::optional<double> fuel_efficiency;
};

/// Wind plant placeholder in the market model; capacities come from the
/// invest variants, capacity factors from the weather variants, cost
/// parameters are shared across all plants.
struct PlantBlueprint {
  std::string id;
  std::string zone;
  ProfileLabel label = ProfileLabel::Other;
};

/// One price-responsive tranche of demand: a share of the hourly load that
/// curtails itself once the price reaches its value of lost load. Tranches
/// are ordered by ascending value of lost load; the remaining share only
/// sheds at the market's shed price.
struct DemandTier {
  double value_of_lost_load = 0.0;  // EUR/MWh
  double share = 0.0;               // fraction of hourly demand in (0, 1]
};

/// One weather year: hourly capacity factors per plant and hourly demand per
/// zone on the study grid.
struct WeatherVariant {
  std::string name;
  std::map<std::string, std::vector<double>> capacity_factors;  // plant -> f_t
  std::map<std::string, std::vector<double>> demand;            // zone -> MW
};

/// One capacity mix: installed MW for every plant and every unit.
struct InvestVariant {
  std::string name;
  std::map<std::string, double> capacity;
};

/// Market-wide settings of the simulator.
struct MarketConfig {
  std::optional<double> price_cap;  // EUR/MWh; applied to reported prices only
  double shed_price = 4000.0;       // EUR/MWh; top of the demand ladder
  std::vector<double> fuel_price_levels;  // EUR/MWh fuel, one scenario each
  std::vector<InvestVariant> invest_variants;
};

/// Everything the simulator needs apart from the weather years.
struct MarketModel {
  TimeGrid grid;
  std::vector<BiddingZone> zones;
  std::vector<PlantBlueprint> plants;
  CostParameters plant_costs;  // shared by all wind plants
  std::vector<UnitSpec> units;
  std::vector<DemandTier> demand_tiers;  // may be empty: all demand sheds at shed_price
  MarketConfig market;
};

struct UnitDispatch {
  std::string unit_id;
  double output = 0.0;  // MW
};

/// Outcome of clearing one zone-hour.
struct HourClearing {
  double price = 0.0;           // reported price, capped if a cap is set
  double uncapped_price = 0.0;  // marginal price before the cap
  double renewable_used = 0.0;  // infeed minus curtailment, MW
  double shed = 0.0;            // demand response activated, MW
  std::vector<UnitDispatch> dispatch;
};

/// Uniform-price clearing of one zone-hour. Renewable infeed bids at zero,
/// units at their marginal cost, and each demand tier enters as virtual
/// supply at its value of lost load; any demand not covered by a tier sheds
/// at shed_price. The price is the marginal cost of the last block needed to
/// serve demand, so it rises monotonically with demand and never exceeds
/// shed_price. Ties between units split pro rata; units serve before demand
/// response at equal cost. A price cap only changes the reported price,
/// never the dispatch.
HourClearing clear_hour(double renewable_infeed,
                        std::span<const DispatchableUnit> units, double demand,
                        std::span<const DemandTier> tiers, double shed_price,
                        std::optional<double> price_cap);

/// Resolve a unit spec against a capacity mix and fuel price.
DispatchableUnit resolve_unit(const UnitSpec& spec, const InvestVariant& mix,
                              double fuel_price);

/// Simulate all zones of one (invest, weather, fuel) combination hour by
/// hour. The scenario id is "<invest>_<weather>_<fuel>"; metadata records
/// the three coordinates. Wind generation is never curtailed in the recorded
/// series; surplus hours simply clear at zero.
Scenario simulate_scenario(const MarketModel& model, const InvestVariant& mix,
                           const WeatherVariant& weather, double fuel_price);

/// Cartesian product invest x weather x fuel in configuration order, with
/// uniform scenario weights. Any empty axis raises ConfigError.
ScenarioEnsemble build_ensemble(const MarketModel& model,
                                std::span<const WeatherVariant> weather);

}  // namespace cfdkit
