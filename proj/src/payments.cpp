#include "cfdkit/payments.hpp"

namespace cfdkit {

namespace {

void check_wiring(const CfdContract& contract, const PlantProfile& plant,
                  CfdType expected) {
  if (contract.plant_id != plant.id) {
    throw DataError("contract for plant '" + contract.plant_id +
                    "' settled against plant '" + plant.id + "'");
  }
  if (contract.type != expected) {
    throw DataError("contract for plant '" + contract.plant_id + "' is of type " +
                    to_string(contract.type) + ", expected " +
                    to_string(expected));
  }
}

PaymentRecord make_record(const CfdContract& contract,
                          const Scenario& scenario, double payment,
                          double reference_price) {
  PaymentRecord record;
  record.plant_id = contract.plant_id;
  record.scenario_id = scenario.id;
  record.type = contract.type;
  record.payment = payment;
  record.reference_price = reference_price;
  record.reference_unit = strike_unit(contract.type);
  return record;
}

}  // namespace

PaymentRecord payment_basic(const CfdContract& contract,
                            const PlantProfile& plant,
                            const Scenario& scenario) {
  check_wiring(contract, plant, CfdType::Basic);
  const auto& q = scenario.generation_for(plant.id);
  const auto& p = scenario.prices_for(plant.zone);
  double payment = 0.0;
  for (std::size_t t = 0; t < q.size(); ++t) {
    payment += (contract.strike - p[t]) * q[t];
  }
  return make_record(contract, scenario, payment,
                     market_value_plant(plant, scenario));
}

PaymentRecord payment_2way(const CfdContract& contract,
                           const PlantProfile& plant, const Fleet& fleet,
                           const Scenario& scenario) {
  check_wiring(contract, plant, CfdType::TwoWay);
  if (!fleet.contains(plant.id)) {
    throw DataError("plant '" + plant.id + "' is not part of fleet '" +
                    fleet.zone + "'");
  }
  const double reference = market_value_zone(fleet, scenario);
  const double energy = total_generation(plant, scenario);
  return make_record(contract, scenario, (contract.strike - reference) * energy,
                     reference);
}

PaymentRecord payment_fin(const CfdContract& contract,
                          const PlantProfile& plant, const Fleet& fleet,
                          const Scenario& scenario) {
  check_wiring(contract, plant, CfdType::Financial);
  if (fleet.plants.empty()) {
    throw DataError("financial reference fleet is empty");
  }
  const double reference = revenue_per_capacity_zone(fleet, scenario);
  const double capacity = scenario.capacity_for(plant.id);
  return make_record(contract, scenario,
                     capacity * (contract.strike - reference), reference);
}

PaymentRecord cfd_payment(const CfdContract& contract,
                          const PlantProfile& plant, const Fleet& fleet,
                          const Scenario& scenario) {
  switch (contract.type) {
    case CfdType::Basic:
      return payment_basic(contract, plant, scenario);
    case CfdType::TwoWay:
      return payment_2way(contract, plant, fleet, scenario);
    case CfdType::Financial:
      return payment_fin(contract, plant, fleet, scenario);
  }
  throw DomainError("unknown CfD type");
}

}  // namespace cfdkit
