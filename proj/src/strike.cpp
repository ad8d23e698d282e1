#include "cfdkit/strike.hpp"

#include <cmath>

namespace cfdkit {

bool RatioDiagnostics::ok() const {
  for (const auto& term : terms) {
    if (term.exceeded) return false;
  }
  return true;
}

namespace {

StrikeEstimate make_estimate(const PlantProfile& plant, CfdType type,
                             double cost_base, double markup) {
  StrikeEstimate estimate;
  estimate.plant_id = plant.id;
  estimate.zone = plant.zone;
  estimate.type = type;
  estimate.cost_base = cost_base;
  estimate.markup = markup;
  estimate.value = cost_base + markup;
  estimate.unit = strike_unit(type);
  return estimate;
}

void require_generation(const PlantProfile& plant, double energy,
                        const char* what) {
  if (energy <= 0.0) {
    throw DomainError("plant '" + plant.id + "': " + what +
                      " is undefined because expected generation is zero");
  }
}

void require_member(const Fleet& fleet, const PlantProfile& plant) {
  if (!fleet.contains(plant.id)) {
    throw DataError("plant '" + plant.id + "' is not part of fleet '" +
                    fleet.zone + "'");
  }
}

Fleet singleton_fleet(const PlantProfile& plant) {
  return Fleet{plant.zone, {plant}};
}

// E[X]/E[Y] with a second-order remainder bound. The scenario mean of X/Y
// differs from the ratio of means by roughly -Cov[X,Y]/E[Y]^2
// + E[X] Var[Y]/E[Y]^3; we report the two magnitudes added so cancellation
// cannot mask a poor approximation.
RatioRemainder ratio_remainder(const std::string& name,
                               std::span<const double> x,
                               std::span<const double> y,
                               std::span<const double> weights,
                               double threshold) {
  const double mean_x = expect(x, weights);
  const double mean_y = expect(y, weights);
  if (mean_y == 0.0) {
    throw DomainError("ratio term '" + name + "': denominator mean is zero");
  }
  RatioRemainder term;
  term.name = name;
  term.leading = mean_x / mean_y;
  const double cov_xy = covariance(x, y, weights);
  const double var_y = covariance(y, y, weights);
  term.dropped = std::abs(cov_xy) / (mean_y * mean_y) +
                 std::abs(mean_x) * var_y / std::abs(mean_y * mean_y * mean_y);
  term.relative = term.leading == 0.0
                      ? (term.dropped == 0.0 ? 0.0 : HUGE_VAL)
                      : term.dropped / std::abs(term.leading);
  term.exceeded = term.relative > threshold;
  return term;
}

}  // namespace

StrikeEstimate strike_basic_det(const PlantProfile& plant,
                                const Scenario& scenario) {
  const double energy = total_generation(plant, scenario);
  require_generation(plant, energy, "basic strike");
  return make_estimate(plant, CfdType::Basic, lcoe(plant, scenario), 0.0);
}

StrikeEstimate strike_2way_det(const PlantProfile& plant, const Fleet& fleet,
                               const Scenario& scenario) {
  require_member(fleet, plant);
  const double energy = total_generation(plant, scenario);
  require_generation(plant, energy, "two-way strike");
  const double base = lcoe(plant, scenario);
  const double markup = market_value_zone(fleet, scenario) -
                        market_value_plant(plant, scenario);
  return make_estimate(plant, CfdType::TwoWay, base, markup);
}

StrikeEstimate strike_fin_det(const PlantProfile& plant, const Fleet& fleet,
                              const Scenario& scenario) {
  require_member(fleet, plant);
  const double capacity = scenario.capacity_for(plant.id);
  if (capacity <= 0.0) {
    throw DomainError("plant '" + plant.id +
                      "': financial strike is undefined without capacity");
  }
  const double base = annual_cost(plant, scenario) / capacity;
  const double markup = revenue_per_capacity_zone(fleet, scenario) -
                        revenue_per_capacity_plant(plant, scenario);
  return make_estimate(plant, CfdType::Financial, base, markup);
}

StrikeEstimate strike_basic_unc(const PlantProfile& plant,
                                const ScenarioEnsemble& ensemble) {
  const auto moments = ensemble_moments(plant, singleton_fleet(plant), ensemble);
  const double sum_factor = moments.sum_mean_factor();
  require_generation(plant, sum_factor, "basic strike");
  const double base =
      plant.costs.variable_cost +
      plant.costs.annuity_factor * plant.costs.invest_cost / sum_factor;
  return make_estimate(plant, CfdType::Basic, base, 0.0);
}

StrikeEstimate strike_2way_unc(const PlantProfile& plant, const Fleet& fleet,
                               const ScenarioEnsemble& ensemble) {
  require_member(fleet, plant);
  const auto own = ensemble_moments(plant, fleet, ensemble);
  const double sum_factor = own.sum_mean_factor();
  require_generation(plant, sum_factor, "two-way strike");
  const double base =
      plant.costs.variable_cost +
      plant.costs.annuity_factor * plant.costs.invest_cost / sum_factor;

  // Expected own market value: sum_t E[f p] / sum_t E[f], exact products.
  double own_revenue = 0.0;
  for (std::size_t t = 0; t < own.mean_factor.size(); ++t) {
    own_revenue +=
        own.mean_factor[t] * own.mean_price[t] + own.cov_factor_price[t];
  }
  const double own_value = own_revenue / sum_factor;

  // Expected fleet market value: generation-weighted so that scenarios with
  // unequal plant capacities aggregate the same way as the deterministic
  // fleet market value.
  double fleet_revenue = 0.0;
  double fleet_energy = 0.0;
  for (const auto& member : fleet.plants) {
    const auto moments = ensemble_moments(member, fleet, ensemble);
    for (std::size_t t = 0; t < moments.mean_generation.size(); ++t) {
      fleet_revenue += moments.mean_generation[t] * moments.mean_price[t] +
                       moments.cov_generation_price[t];
      fleet_energy += moments.mean_generation[t];
    }
  }
  if (fleet_energy <= 0.0) {
    throw DomainError("fleet '" + fleet.zone +
                      "': expected generation is zero");
  }
  const double fleet_value = fleet_revenue / fleet_energy;

  auto estimate = make_estimate(plant, CfdType::TwoWay, base,
                                fleet_value - own_value);

  // Remainder diagnostics: per-scenario numerators and denominators of the
  // three ratios the closed form approximates.
  const std::size_t count = ensemble.size();
  std::vector<double> cost_num(count), factor_sum(count), zone_num(count),
      zone_den(count), own_num(count);
  for (std::size_t s = 0; s < count; ++s) {
    const Scenario& scenario = ensemble.scenarios[s];
    const auto& prices = scenario.prices_for(plant.zone);
    const double capacity = scenario.capacity_for(plant.id);
    const auto& q = scenario.generation_for(plant.id);
    double sum_f = 0.0, sum_fp = 0.0;
    for (std::size_t t = 0; t < q.size(); ++t) {
      sum_f += q[t] / capacity;
      sum_fp += q[t] / capacity * prices[t];
    }
    factor_sum[s] = sum_f;
    own_num[s] = sum_fp;
    cost_num[s] = plant.costs.variable_cost * sum_f +
                  plant.costs.annuity_factor * plant.costs.invest_cost;
    double revenue = 0.0, energy = 0.0;
    for (const auto& member : fleet.plants) {
      const auto& mq = scenario.generation_for(member.id);
      const auto& mp = scenario.prices_for(member.zone);
      for (std::size_t t = 0; t < mq.size(); ++t) {
        revenue += mq[t] * mp[t];
        energy += mq[t];
      }
    }
    zone_num[s] = revenue;
    zone_den[s] = energy;
  }
  auto& diagnostics = estimate.diagnostics;
  diagnostics.terms.push_back(ratio_remainder(
      "cost_per_energy", cost_num, factor_sum, ensemble.weights,
      diagnostics.threshold));
  diagnostics.terms.push_back(ratio_remainder("fleet_market_value", zone_num,
                                              zone_den, ensemble.weights,
                                              diagnostics.threshold));
  diagnostics.terms.push_back(ratio_remainder("own_market_value", own_num,
                                              factor_sum, ensemble.weights,
                                              diagnostics.threshold));
  return estimate;
}

StrikeEstimate strike_fin_unc(const PlantProfile& plant, const Fleet& fleet,
                              const ScenarioEnsemble& ensemble,
                              bool drop_last_cov) {
  if (fleet.plants.empty()) {
    throw DataError("financial reference fleet is empty");
  }
  const auto own = ensemble_moments(plant, singleton_fleet(plant), ensemble);
  const double base =
      plant.costs.variable_cost * own.sum_mean_factor() +
      plant.costs.annuity_factor * plant.costs.invest_cost;

  // Reference fleet revenue per capacity: sum_i sum_t E[w_i f_i p], with the
  // trailing Cov[w, f p] kept or dropped per flag.
  double fleet_term = 0.0;
  for (const auto& member : fleet.plants) {
    const auto moments = ensemble_moments(member, fleet, ensemble);
    for (std::size_t t = 0; t < moments.mean_factor.size(); ++t) {
      fleet_term +=
          moments.mean_weight * (moments.mean_factor[t] * moments.mean_price[t] +
                                 moments.cov_factor_price[t]);
      if (!drop_last_cov) fleet_term += moments.cov_weight_revenue[t];
    }
  }

  double own_term = 0.0;
  for (std::size_t t = 0; t < own.mean_factor.size(); ++t) {
    own_term += own.mean_factor[t] * own.mean_price[t] + own.cov_factor_price[t];
  }

  return make_estimate(plant, CfdType::Financial, base, fleet_term - own_term);
}

}  // namespace cfdkit
