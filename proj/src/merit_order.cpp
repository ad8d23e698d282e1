#include "cfdkit/merit_order.hpp"

#include <algorithm>
#include <cmath>

#include "cfdkit/csv.hpp"

namespace cfdkit {

namespace {

// One block of the extended supply curve. rank orders blocks of equal cost:
// renewables, then units, then demand response.
struct SupplyBlock {
  double cost = 0.0;
  double capacity = 0.0;
  int rank = 0;
  std::size_t unit_index = 0;  // meaningful for rank 1 only
  bool is_shed = false;
};

}  // namespace

HourClearing clear_hour(double renewable_infeed,
                        std::span<const DispatchableUnit> units, double demand,
                        std::span<const DemandTier> tiers, double shed_price,
                        std::optional<double> price_cap) {
  if (!(demand >= 0.0)) {
    throw DataError("clearing: demand must be non-negative");
  }
  if (!(renewable_infeed >= 0.0)) {
    throw DataError("clearing: renewable infeed must be non-negative");
  }

  std::vector<SupplyBlock> blocks;
  blocks.reserve(units.size() + tiers.size() + 2);
  blocks.push_back({0.0, renewable_infeed, 0, 0, false});
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (!(units[i].capacity >= 0.0)) {
      throw DataError("clearing: unit '" + units[i].id +
                      "' has negative capacity");
    }
    blocks.push_back({units[i].marginal_cost, units[i].capacity, 1, i, false});
  }
  double flexible_share = 0.0;
  for (const auto& tier : tiers) {
    blocks.push_back({tier.value_of_lost_load, tier.share * demand, 2, 0, true});
    flexible_share += tier.share;
  }
  // Whatever no tier covers sheds at the shed price; the extended supply
  // curve therefore always reaches demand.
  const double rest = std::max(0.0, 1.0 - flexible_share);
  blocks.push_back({shed_price, rest * demand, 2, 0, true});

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const SupplyBlock& a, const SupplyBlock& b) {
                     if (a.cost != b.cost) return a.cost < b.cost;
                     return a.rank < b.rank;
                   });

  HourClearing result;
  result.dispatch.resize(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    result.dispatch[i].unit_id = units[i].id;
  }

  if (demand == 0.0) {
    if (price_cap) result.price = std::min(result.price, *price_cap);
    return result;
  }

  double remaining = demand;
  std::size_t i = 0;
  while (i < blocks.size() && remaining > 0.0) {
    // Blocks of equal cost and rank clear together, pro rata when marginal.
    std::size_t j = i;
    double group_capacity = 0.0;
    while (j < blocks.size() && blocks[j].cost == blocks[i].cost &&
           blocks[j].rank == blocks[i].rank) {
      group_capacity += blocks[j].capacity;
      ++j;
    }
    const double served = std::min(remaining, group_capacity);
    const double fraction = group_capacity > 0.0 ? served / group_capacity : 0.0;
    for (std::size_t k = i; k < j; ++k) {
      const double output = blocks[k].capacity * fraction;
      if (blocks[k].rank == 0) {
        result.renewable_used += output;
      } else if (blocks[k].rank == 1) {
        result.dispatch[blocks[k].unit_index].output += output;
      } else {
        result.shed += output;
      }
    }
    if (served > 0.0) result.uncapped_price = blocks[i].cost;
    remaining -= served;
    i = j;
  }
  // remaining can only be > 0 through rounding; the shed block closes the gap.

  result.price = result.uncapped_price;
  if (price_cap) result.price = std::min(result.price, *price_cap);
  return result;
}

DispatchableUnit resolve_unit(const UnitSpec& spec, const InvestVariant& mix,
                              double fuel_price) {
  auto it = mix.capacity.find(spec.id);
  if (it == mix.capacity.end()) {
    throw ConfigError("invest variant '" + mix.name +
                      "' has no capacity for unit '" + spec.id + "'");
  }
  DispatchableUnit unit;
  unit.id = spec.id;
  unit.zone = spec.zone;
  unit.capacity = it->second;
  if (spec.marginal_cost && spec.fuel_efficiency) {
    throw ConfigError("unit '" + spec.id +
                      "': set either marginal_cost or fuel_efficiency");
  }
  if (spec.marginal_cost) {
    unit.marginal_cost = *spec.marginal_cost;
  } else if (spec.fuel_efficiency) {
    if (*spec.fuel_efficiency <= 0.0) {
      throw ConfigError("unit '" + spec.id +
                        "': fuel efficiency must be positive");
    }
    unit.marginal_cost = fuel_price / *spec.fuel_efficiency;
  } else {
    throw ConfigError("unit '" + spec.id +
                      "': set marginal_cost or fuel_efficiency");
  }
  return unit;
}

Scenario simulate_scenario(const MarketModel& model, const InvestVariant& mix,
                           const WeatherVariant& weather, double fuel_price) {
  const std::size_t hours = model.grid.hours;
  Scenario scenario;
  scenario.id = mix.name + "_" + weather.name + "_" + format_double(fuel_price);
  scenario.grid = model.grid;
  scenario.metadata["invest"] = mix.name;
  scenario.metadata["weather"] = weather.name;
  scenario.metadata["fuel_price"] = format_double(fuel_price);

  // Wind output is f * Q regardless of the clearing; surplus hours show up
  // as zero prices, not as curtailed series.
  for (const auto& plant : model.plants) {
    auto f_it = weather.capacity_factors.find(plant.id);
    if (f_it == weather.capacity_factors.end()) {
      throw DataError("weather variant '" + weather.name +
                      "' has no capacity factors for plant '" + plant.id + "'");
    }
    if (f_it->second.size() != hours) {
      throw DataError("weather variant '" + weather.name + "': plant '" +
                      plant.id + "' series has " +
                      std::to_string(f_it->second.size()) + " hours, grid has " +
                      std::to_string(hours));
    }
    auto q_it = mix.capacity.find(plant.id);
    if (q_it == mix.capacity.end()) {
      throw ConfigError("invest variant '" + mix.name +
                        "' has no capacity for plant '" + plant.id + "'");
    }
    scenario.plant_capacity[plant.id] = q_it->second;
    std::vector<double> output(hours);
    for (std::size_t t = 0; t < hours; ++t) {
      output[t] = f_it->second[t] * q_it->second * model.grid.hour_duration;
    }
    scenario.generation[plant.id] = std::move(output);
  }

  for (const auto& zone : model.zones) {
    auto d_it = weather.demand.find(zone.id);
    if (d_it == weather.demand.end()) {
      throw DataError("weather variant '" + weather.name +
                      "' has no demand for zone '" + zone.id + "'");
    }
    if (d_it->second.size() != hours) {
      throw DataError("weather variant '" + weather.name + "': zone '" +
                      zone.id + "' demand has " +
                      std::to_string(d_it->second.size()) + " hours, grid has " +
                      std::to_string(hours));
    }

    std::vector<DispatchableUnit> units;
    for (const auto& spec : model.units) {
      if (spec.zone == zone.id) {
        units.push_back(resolve_unit(spec, mix, fuel_price));
      }
    }
    std::vector<const std::vector<double>*> infeed_factors;
    std::vector<double> infeed_capacity;
    for (const auto& plant : model.plants) {
      if (plant.zone == zone.id) {
        infeed_factors.push_back(&weather.capacity_factors.at(plant.id));
        infeed_capacity.push_back(scenario.plant_capacity.at(plant.id));
      }
    }

    std::vector<double> prices(hours);
    for (std::size_t t = 0; t < hours; ++t) {
      double infeed = 0.0;
      for (std::size_t i = 0; i < infeed_factors.size(); ++i) {
        infeed += (*infeed_factors[i])[t] * infeed_capacity[i];
      }
      const auto cleared =
          clear_hour(infeed, units, d_it->second[t], model.demand_tiers,
                     model.market.shed_price, model.market.price_cap);
      prices[t] = cleared.price;
    }
    scenario.prices[zone.id] = std::move(prices);
    scenario.demand[zone.id] = d_it->second;
  }
  return scenario;
}

ScenarioEnsemble build_ensemble(const MarketModel& model,
                                std::span<const WeatherVariant> weather) {
  if (model.market.invest_variants.empty()) {
    throw ConfigError("no invest variants configured");
  }
  if (weather.empty()) {
    throw ConfigError("no weather variants configured");
  }
  if (model.market.fuel_price_levels.empty()) {
    throw ConfigError("no fuel price levels configured");
  }
  std::vector<Scenario> scenarios;
  scenarios.reserve(model.market.invest_variants.size() * weather.size() *
                    model.market.fuel_price_levels.size());
  for (const auto& mix : model.market.invest_variants) {
    for (const auto& year : weather) {
      for (double fuel : model.market.fuel_price_levels) {
        scenarios.push_back(simulate_scenario(model, mix, year, fuel));
      }
    }
  }
  return ScenarioEnsemble::uniform(std::move(scenarios));
}

}  // namespace cfdkit
