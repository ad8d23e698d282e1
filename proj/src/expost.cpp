#include "cfdkit/expost.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace cfdkit {

ExPostResult cost_recovery(const PlantProfile& plant,
                           const std::optional<CfdContract>& contract,
                           const Fleet& fleet, const Scenario& scenario) {
  ExPostResult result;
  result.plant_id = plant.id;
  result.scenario_id = scenario.id;

  const auto& q = scenario.generation_for(plant.id);
  const auto& p = scenario.prices_for(plant.zone);
  for (std::size_t t = 0; t < q.size(); ++t) {
    result.market_revenue += q[t] * p[t];
  }
  result.cost = annual_cost(plant, scenario);
  if (result.cost == 0.0) {
    throw DomainError("plant '" + plant.id + "' in scenario '" + scenario.id +
                      "': cost recovery is undefined at zero cost");
  }
  if (contract) {
    result.cfd = contract->type;
    result.payment = cfd_payment(*contract, plant, fleet, scenario).payment;
  }
  result.cost_recovery =
      (result.market_revenue + result.payment) / result.cost;
  return result;
}

double coefficient_of_variation(std::span<const double> values) {
  if (values.empty()) {
    throw DataError("coefficient of variation: empty sample");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (mean == 0.0) {
    throw DomainError("coefficient of variation is undefined at zero mean");
  }
  double variance = 0.0;
  for (double v : values) variance += (v - mean) * (v - mean);
  variance /= static_cast<double>(values.size());
  return std::sqrt(variance) / mean;
}

double payment_total(std::span<const PaymentRecord> payments) {
  double total = 0.0;
  for (const auto& record : payments) total += record.payment;
  return total;
}

double zone_payments(std::span<const CfdContract> contracts, const Fleet& fleet,
                     const Scenario& scenario) {
  double total = 0.0;
  for (const auto& contract : contracts) {
    const auto& plant = fleet.find(contract.plant_id);
    total += cfd_payment(contract, plant, fleet, scenario).payment;
  }
  return total;
}

ConsumerPrice consumer_price(const std::string& zone, const Scenario& scenario,
                             double zone_payments) {
  const auto& d = scenario.demand_for(zone);
  const auto& p = scenario.prices_for(zone);
  double energy = 0.0;
  double spend = 0.0;
  for (std::size_t t = 0; t < d.size(); ++t) {
    energy += d[t];
    spend += d[t] * p[t];
  }
  if (energy <= 0.0) {
    throw DomainError("zone '" + zone + "' in scenario '" + scenario.id +
                      "': consumer price is undefined at zero demand");
  }
  ConsumerPrice result;
  result.zone = zone;
  result.scenario_id = scenario.id;
  result.energy_price = spend / energy;
  result.levy = zone_payments / energy;
  result.total = result.energy_price + result.levy;
  return result;
}

double percentile(std::span<const double> values, double fraction) {
  if (values.empty()) {
    throw DataError("percentile: empty sample");
  }
  if (fraction < 0.0 || fraction > 100.0) {
    throw DomainError("percentile fraction must lie in [0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double position = fraction / 100.0 * static_cast<double>(sorted.size() - 1);
  const std::size_t lower = static_cast<std::size_t>(position);
  if (lower + 1 >= sorted.size()) return sorted.back();
  const double weight = position - static_cast<double>(lower);
  return sorted[lower] * (1.0 - weight) + sorted[lower + 1] * weight;
}

DistributionSummary distribution_summary(std::span<const double> values) {
  DistributionSummary summary;
  summary.min = percentile(values, 0.0);
  summary.p6_25 = percentile(values, 6.25);
  summary.p12_5 = percentile(values, 12.5);
  summary.p25 = percentile(values, 25.0);
  summary.median = percentile(values, 50.0);
  summary.p75 = percentile(values, 75.0);
  summary.p87_5 = percentile(values, 87.5);
  summary.p93_75 = percentile(values, 93.75);
  summary.max = percentile(values, 100.0);
  return summary;
}

}  // namespace cfdkit
