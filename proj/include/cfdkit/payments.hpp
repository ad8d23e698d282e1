#pragma once

#include <string>

#include "cfdkit/core.hpp"

namespace cfdkit {

/// A support contract for one plant. The strike carries the unit of its
/// design: EUR/MWh for Basic and TwoWay, EUR/MW for Financial.
struct CfdContract {
  std::string plant_id;
  CfdType type = CfdType::Basic;
  double strike = 0.0;
  int duration_years = 0;  // informational only
};

/// Settled contract payment for one plant in one scenario. Positive values
/// flow from the public side to the plant, negative values are paybacks.
/// reference_price records the realised reference the settlement used: the
/// plant's own volume-weighted price for Basic, the fleet market value for
/// TwoWay (both EUR/MWh) and the fleet revenue per capacity for Financial
/// (EUR/MW).
struct PaymentRecord {
  std::string plant_id;
  std::string scenario_id;
  CfdType type = CfdType::Basic;
  double payment = 0.0;
  double reference_price = 0.0;
  std::string reference_unit;
};

/// Hourly settlement against the spot price: sum_t (S - p_t) q_t.
PaymentRecord payment_basic(const CfdContract& contract,
                            const PlantProfile& plant,
                            const Scenario& scenario);

/// Yearly settlement against the fleet market value: (S - v_n) sum_t q_t.
PaymentRecord payment_2way(const CfdContract& contract,
                           const PlantProfile& plant, const Fleet& fleet,
                           const Scenario& scenario);

/// Generation-independent settlement per unit of capacity against the fleet
/// revenue per capacity: Q (S - r_n).
PaymentRecord payment_fin(const CfdContract& contract,
                          const PlantProfile& plant, const Fleet& fleet,
                          const Scenario& scenario);

/// Dispatch on contract type. The fleet is the settlement reference for the
/// TwoWay and Financial designs and ignored by Basic.
PaymentRecord cfd_payment(const CfdContract& contract,
                          const PlantProfile& plant, const Fleet& fleet,
                          const Scenario& scenario);

}  // namespace cfdkit
