#include "cfdkit/estimators.hpp"

#include <numeric>
#include <string>

namespace cfdkit {

namespace {

void check_lengths(std::span<const double> values,
                   std::span<const double> weights) {
  if (values.size() != weights.size()) {
    throw DataError("estimator: " + std::to_string(values.size()) +
                    " values vs " + std::to_string(weights.size()) +
                    " weights");
  }
  if (values.empty()) {
    throw DataError("estimator: empty sample");
  }
}

}  // namespace

std::vector<double> uniform_weights(std::size_t count) {
  if (count == 0) throw DataError("estimator: empty sample");
  return std::vector<double>(count, 1.0 / static_cast<double>(count));
}

double expect(std::span<const double> values, std::span<const double> weights) {
  check_lengths(values, weights);
  double mean = 0.0;
  for (std::size_t s = 0; s < values.size(); ++s) {
    mean += weights[s] * values[s];
  }
  return mean;
}

double covariance(std::span<const double> x, std::span<const double> y,
                  std::span<const double> weights) {
  check_lengths(x, weights);
  check_lengths(y, weights);
  const double mean_x = expect(x, weights);
  const double mean_y = expect(y, weights);
  double cov = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    cov += weights[s] * (x[s] - mean_x) * (y[s] - mean_y);
  }
  return cov;
}

double expect_product2(std::span<const double> x, std::span<const double> y,
                       std::span<const double> weights) {
  return expect(x, weights) * expect(y, weights) + covariance(x, y, weights);
}

double expect_product3(std::span<const double> x, std::span<const double> y,
                       std::span<const double> z,
                       std::span<const double> weights, bool drop_last_cov) {
  check_lengths(x, weights);
  double value = expect(x, weights) * expect_product2(y, z, weights);
  if (!drop_last_cov) {
    std::vector<double> yz(y.size());
    for (std::size_t s = 0; s < y.size(); ++s) yz[s] = y[s] * z[s];
    value += covariance(x, yz, weights);
  }
  return value;
}

double EnsembleMoments::sum_mean_factor() const {
  return std::accumulate(mean_factor.begin(), mean_factor.end(), 0.0);
}

double EnsembleMoments::sum_mean_generation() const {
  return std::accumulate(mean_generation.begin(), mean_generation.end(), 0.0);
}

EnsembleMoments ensemble_moments(const PlantProfile& plant, const Fleet& fleet,
                                 const ScenarioEnsemble& ensemble) {
  ensemble.validate();
  const std::size_t count = ensemble.size();
  const std::size_t hours = ensemble.scenarios.front().grid.hours;

  // Per-scenario capacity share of the plant within its fleet.
  std::vector<double> share(count);
  for (std::size_t s = 0; s < count; ++s) {
    const Scenario& scenario = ensemble.scenarios[s];
    double fleet_capacity = 0.0;
    for (const auto& member : fleet.plants) {
      fleet_capacity += scenario.capacity_for(member.id);
    }
    if (fleet_capacity <= 0.0) {
      throw DomainError("scenario '" + scenario.id + "': fleet '" +
                        fleet.zone + "' has no installed capacity");
    }
    share[s] = scenario.capacity_for(plant.id) / fleet_capacity;
  }

  EnsembleMoments moments;
  moments.mean_factor.resize(hours);
  moments.mean_price.resize(hours);
  moments.cov_factor_price.resize(hours);
  moments.mean_generation.resize(hours);
  moments.cov_generation_price.resize(hours);
  moments.cov_weight_revenue.resize(hours);
  moments.mean_weight = expect(share, ensemble.weights);

  std::vector<double> factor(count), price(count), generation(count),
      revenue(count);
  for (std::size_t t = 0; t < hours; ++t) {
    for (std::size_t s = 0; s < count; ++s) {
      const Scenario& scenario = ensemble.scenarios[s];
      if (scenario.grid.hours != hours) {
        throw DataError("scenario '" + scenario.id +
                        "' grid disagrees with the rest of the ensemble");
      }
      const double q = scenario.generation_for(plant.id)[t];
      const double p = scenario.prices_for(plant.zone)[t];
      const double capacity = scenario.capacity_for(plant.id);
      if (capacity <= 0.0) {
        throw DomainError("scenario '" + scenario.id + "': plant '" +
                          plant.id + "' has no installed capacity");
      }
      factor[s] = q / capacity;
      price[s] = p;
      generation[s] = q;
      revenue[s] = factor[s] * p;
    }
    moments.mean_factor[t] = expect(factor, ensemble.weights);
    moments.mean_price[t] = expect(price, ensemble.weights);
    moments.cov_factor_price[t] = covariance(factor, price, ensemble.weights);
    moments.mean_generation[t] = expect(generation, ensemble.weights);
    moments.cov_generation_price[t] =
        covariance(generation, price, ensemble.weights);
    moments.cov_weight_revenue[t] = covariance(share, revenue, ensemble.weights);
  }
  return moments;
}

}  // namespace cfdkit
