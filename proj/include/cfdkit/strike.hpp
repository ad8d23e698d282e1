#pragma once

#include <string>
#include <vector>

#include "cfdkit/core.hpp"
#include "cfdkit/estimators.hpp"

namespace cfdkit {

/// One ratio-of-means approximation inside an uncertainty strike. The
/// estimator replaces the scenario mean of X/Y by E[X]/E[Y]; `dropped` is the
/// size of the second-order remainder -Cov[X,Y]/E[Y]^2 + E[X] Var[Y]/E[Y]^3.
struct RatioRemainder {
  std::string name;
  double leading = 0.0;   // E[X]/E[Y]
  double dropped = 0.0;   // remainder magnitude estimate
  double relative = 0.0;  // |dropped| / |leading|
  bool exceeded = false;
};

/// Diagnostics for the ratio approximations of a strike estimate. `ok()` is
/// false when any remainder exceeds `threshold` relative to its leading term,
/// meaning the closed-form strike may deviate noticeably from a brute-force
/// scenario average.
struct RatioDiagnostics {
  double threshold = 0.01;
  std::vector<RatioRemainder> terms;

  bool ok() const;
};

/// A strike price decomposed into a cost-covering base and a market-value
/// correction: value = cost_base + markup.
struct StrikeEstimate {
  std::string plant_id;
  std::string zone;
  CfdType type = CfdType::Basic;
  double value = 0.0;
  double cost_base = 0.0;
  double markup = 0.0;
  std::string unit;             // EUR/MWh or EUR/MW
  RatioDiagnostics diagnostics; // populated by strike_2way_unc only
};

// ---- deterministic strikes (single known scenario) -------------------------
//
// Each strike makes the plant exactly break even in the given scenario.
// A plant with zero generation (or zero capacity for the financial design)
// has no defined strike; these raise DomainError.

/// Basic design, referenced hourly on the spot price: the strike equals the
/// plant's average cost per unit of energy.
StrikeEstimate strike_basic_det(const PlantProfile& plant,
                                const Scenario& scenario);

/// Two-way design, referenced yearly on the fleet market value v_n:
/// strike = lcoe + v_n - v_i with the plant's own market value v_i.
StrikeEstimate strike_2way_det(const PlantProfile& plant, const Fleet& fleet,
                               const Scenario& scenario);

/// Financial design, per unit of capacity, referenced yearly on the fleet
/// revenue per capacity r_n: strike = cost/capacity + r_n - r_i.
StrikeEstimate strike_fin_det(const PlantProfile& plant, const Fleet& fleet,
                              const Scenario& scenario);

// ---- strikes under uncertainty (scenario ensemble) -------------------------
//
// Closed-form estimators built from ensemble moments. An investor quoting
// these strikes breaks even in expectation over the ensemble, up to the
// documented ratio approximations.

/// Basic design: strike = c + A M / sum_t E[f_t].
StrikeEstimate strike_basic_unc(const PlantProfile& plant,
                                const ScenarioEnsemble& ensemble);

/// Two-way design: cost base as in the basic design plus the difference
/// between expected fleet and own market value, each a ratio of expected
/// sums. The result carries remainder diagnostics for the three ratios.
StrikeEstimate strike_2way_unc(const PlantProfile& plant, const Fleet& fleet,
                               const ScenarioEnsemble& ensemble);

/// Financial design: exact linear estimator
///   strike = c sum_t E[f_t] + A M + sum_i sum_t E[w_i f_i p] - sum_t E[f p].
/// The triple products optionally drop the trailing Cov[w, f p] term, which
/// is exact when fleet capacity shares do not vary across scenarios.
StrikeEstimate strike_fin_unc(const PlantProfile& plant, const Fleet& fleet,
                              const ScenarioEnsemble& ensemble,
                              bool drop_last_cov = true);

}  // namespace cfdkit
