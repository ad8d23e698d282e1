#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfdkit/core.hpp"

namespace cfdkit {

// Weighted sample-moment estimators over a scenario ensemble. Weights are
// probabilities (non-negative, summing to one); with uniform weights these
// reduce to plain sample means and population covariances.

std::vector<double> uniform_weights(std::size_t count);

/// E[x] = sum_s w_s x_s
double expect(std::span<const double> values, std::span<const double> weights);

/// Population covariance Cov[x,y] = sum_s w_s (x_s - E[x]) (y_s - E[y])
double covariance(std::span<const double> x, std::span<const double> y,
                  std::span<const double> weights);

/// Exact product mean E[x y] = E[x] E[y] + Cov[x,y]
double expect_product2(std::span<const double> x, std::span<const double> y,
                       std::span<const double> weights);

/// Triple product mean through nested covariances:
///   E[x y z] = E[x] E[y z] = E[x] (E[y] E[z] + Cov[y,z]) + Cov[x, y z].
/// With drop_last_cov the trailing Cov[x, y z] is omitted, which is exact
/// whenever x is constant across scenarios and an approximation otherwise.
double expect_product3(std::span<const double> x, std::span<const double> y,
                       std::span<const double> z,
                       std::span<const double> weights,
                       bool drop_last_cov = true);

/// Per-hour and per-plant moments of a scenario ensemble, assembled through
/// the primitives above so that every strike formula draws from one source.
/// For each hour t, across scenarios s:
///   f_t: capacity factor of the plant (q_t / Q in scenario s)
///   p_t: zonal price
///   q_t: realised generation
///   w:   capacity share of the plant within its fleet
struct EnsembleMoments {
  std::vector<double> mean_factor;          // E[f_t]
  std::vector<double> mean_price;           // E[p_t]
  std::vector<double> cov_factor_price;     // Cov[f_t, p_t]
  std::vector<double> mean_generation;      // E[q_t]
  std::vector<double> cov_generation_price; // Cov[q_t, p_t]
  double mean_weight = 0.0;                 // E[w]
  std::vector<double> cov_weight_revenue;   // Cov[w, f_t p_t]

  double sum_mean_factor() const;       // sum_t E[f_t]
  double sum_mean_generation() const;   // sum_t E[q_t]
};

EnsembleMoments ensemble_moments(const PlantProfile& plant, const Fleet& fleet,
                                 const ScenarioEnsemble& ensemble);

}  // namespace cfdkit
