#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cfdkit/core.hpp"

namespace testutil {

inline cfdkit::PlantProfile make_plant(
    std::string id, std::string zone, double capacity,
    cfdkit::CostParameters costs = {},
    cfdkit::ProfileLabel label = cfdkit::ProfileLabel::Other) {
  cfdkit::PlantProfile plant;
  plant.id = std::move(id);
  plant.zone = std::move(zone);
  plant.capacity = capacity;
  plant.costs = costs;
  plant.label = label;
  return plant;
}

// Small fluent builder for hand-made scenarios.
struct ScenarioBuilder {
  cfdkit::Scenario scenario;

  ScenarioBuilder(std::string id, std::size_t hours) {
    scenario.id = std::move(id);
    scenario.grid.hours = hours;
  }
  ScenarioBuilder& prices(const std::string& zone, std::vector<double> p) {
    scenario.prices[zone] = std::move(p);
    return *this;
  }
  ScenarioBuilder& demand(const std::string& zone, std::vector<double> d) {
    scenario.demand[zone] = std::move(d);
    return *this;
  }
  ScenarioBuilder& plant(const std::string& id, double capacity,
                         std::vector<double> generation) {
    scenario.generation[id] = std::move(generation);
    scenario.plant_capacity[id] = capacity;
    return *this;
  }
  cfdkit::Scenario build() const { return scenario; }
};

}  // namespace testutil
