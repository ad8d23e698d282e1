#pragma once

#include <optional>
#include <span>
#include <string>

#include "cfdkit/core.hpp"
#include "cfdkit/payments.hpp"

namespace cfdkit {

/// Realised economics of one plant in one scenario, with or without a
/// contract. cost_recovery is (market revenue + contract payment) / cost;
/// 1.0 means exact break-even.
struct ExPostResult {
  std::string plant_id;
  std::string scenario_id;
  std::optional<CfdType> cfd;  // nullopt = uncontracted baseline
  double market_revenue = 0.0;
  double payment = 0.0;
  double cost = 0.0;
  double cost_recovery = 0.0;
};

/// Evaluate one plant in one scenario. Without a contract the payment is
/// zero and the fleet is ignored; with a contract the fleet is the
/// settlement reference of its design. Zero cost raises DomainError.
ExPostResult cost_recovery(const PlantProfile& plant,
                           const std::optional<CfdContract>& contract,
                           const Fleet& fleet, const Scenario& scenario);

/// Population coefficient of variation: std / mean with the biased
/// (1/N) variance. Raises DomainError when the mean is zero.
double coefficient_of_variation(std::span<const double> values);

/// Sum of contract payments, e.g. all payments charged to one zone in one
/// scenario. Positive totals are costs to consumers.
double payment_total(std::span<const PaymentRecord> payments);

/// Settle a set of contracts in one scenario and sum the payments. Every
/// contracted plant must belong to the fleet, which also acts as the
/// settlement reference; for financial contracts with a custom reference,
/// settle individually and use payment_total instead.
double zone_payments(std::span<const CfdContract> contracts, const Fleet& fleet,
                     const Scenario& scenario);

/// Volumetric consumer price of one zone in one scenario: the
/// demand-weighted energy price plus a levy that passes the zone's contract
/// payments through to consumers per unit of demand.
struct ConsumerPrice {
  std::string zone;
  std::string scenario_id;
  double energy_price = 0.0;  // sum_t p_t d_t / sum_t d_t
  double levy = 0.0;          // zone payments / sum_t d_t
  double total = 0.0;
};

ConsumerPrice consumer_price(const std::string& zone, const Scenario& scenario,
                             double zone_payments);

/// Letter-value summary of a sample: min, 6.25 / 12.5 / 25 / 50 / 75 / 87.5 /
/// 93.75 percentiles and max, with linear interpolation between order
/// statistics.
struct DistributionSummary {
  double min = 0.0;
  double p6_25 = 0.0;
  double p12_5 = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double p87_5 = 0.0;
  double p93_75 = 0.0;
  double max = 0.0;
};

/// Percentile with fraction in [0, 100], linear interpolation at position
/// fraction/100 * (N-1) of the sorted sample.
double percentile(std::span<const double> values, double fraction);

DistributionSummary distribution_summary(std::span<const double> values);

}  // namespace cfdkit
