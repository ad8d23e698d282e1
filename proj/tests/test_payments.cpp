#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "cfdkit/payments.hpp"
#include "helpers.hpp"

using namespace cfdkit;
using testutil::ScenarioBuilder;
using testutil::make_plant;

TEST_CASE("basic payment settles hour by hour") {
  const auto plant = make_plant("a", "Z", 1.0);
  const CfdContract contract{"a", CfdType::Basic, 50.0};

  auto symmetric = ScenarioBuilder("s", 2)
                       .prices("Z", {40.0, 60.0})
                       .plant("a", 1.0, {1.0, 1.0})
                       .build();
  CHECK(payment_basic(contract, plant, symmetric).payment ==
        doctest::Approx(0.0));

  auto idle = ScenarioBuilder("s", 2)
                  .prices("Z", {40.0, 60.0})
                  .plant("a", 1.0, {0.0, 0.0})
                  .build();
  CHECK(payment_basic(contract, plant, idle).payment == doctest::Approx(0.0));

  auto skewed = ScenarioBuilder("s", 2)
                    .prices("Z", {40.0, 60.0})
                    .plant("a", 1.0, {1.0, 0.0})
                    .build();
  const auto record = payment_basic(contract, plant, skewed);
  CHECK(record.payment == doctest::Approx(10.0));
  CHECK(record.reference_price == doctest::Approx(40.0));
  CHECK(record.reference_unit == "EUR/MWh");
  CHECK(record.plant_id == "a");
  CHECK(record.scenario_id == "s");
}

TEST_CASE("two-way payment settles on the fleet market value") {
  const auto a = make_plant("a", "Z", 1.0);
  const auto b = make_plant("b", "Z", 1.0);
  const Fleet fleet{"Z", {a, b}};
  // v_n = 45: a sells 2 MWh at 40, b sells 2 MWh at 50
  auto scenario = ScenarioBuilder("s", 2)
                      .prices("Z", {40.0, 50.0})
                      .plant("a", 1.0, {2.0, 0.0})
                      .plant("b", 1.0, {0.0, 2.0})
                      .build();
  CHECK(market_value_zone(fleet, scenario) == doctest::Approx(45.0));

  CHECK(payment_2way({"a", CfdType::TwoWay, 45.0}, a, fleet, scenario).payment ==
        doctest::Approx(0.0));
  CHECK(payment_2way({"a", CfdType::TwoWay, 50.0}, a, fleet, scenario).payment ==
        doctest::Approx(10.0));
  CHECK(payment_2way({"a", CfdType::TwoWay, 60.0}, a, fleet, scenario).payment ==
        doctest::Approx(2.0 * (60.0 - 45.0)));
  const auto record =
      payment_2way({"a", CfdType::TwoWay, 35.0}, a, fleet, scenario);
  CHECK(record.payment == doctest::Approx(-20.0));
  CHECK(record.reference_price == doctest::Approx(45.0));
}

TEST_CASE("financial payment ignores own volume") {
  const auto a = make_plant("a", "Z", 1.0);
  const auto b = make_plant("b", "Z", 1.0);
  const Fleet fleet{"Z", {a, b}};
  auto scenario = ScenarioBuilder("s", 2)
                      .prices("Z", {45000.0, 45000.0})
                      .plant("a", 1.0, {1.0, 1.0})
                      .plant("b", 1.0, {1.0, 1.0})
                      .build();
  CHECK(revenue_per_capacity_zone(fleet, scenario) == doctest::Approx(90000.0));

  CHECK(payment_fin({"a", CfdType::Financial, 90000.0}, a, fleet, scenario)
            .payment == doctest::Approx(0.0));
  const auto record =
      payment_fin({"a", CfdType::Financial, 100000.0}, a, fleet, scenario);
  CHECK(record.payment == doctest::Approx(10000.0));
  CHECK(record.reference_unit == "EUR/MW");

  // muting the plant's own output changes nothing as long as the fleet
  // reference is unchanged
  auto muted = scenario;
  muted.generation["a"] = {0.0, 0.0};
  Fleet reference{"Z", {b}};
  const auto before =
      payment_fin({"a", CfdType::Financial, 100000.0}, a, reference, scenario);
  const auto after =
      payment_fin({"a", CfdType::Financial, 100000.0}, a, reference, muted);
  CHECK(before.payment == doctest::Approx(after.payment));
}

TEST_CASE("payment wiring is checked") {
  const auto a = make_plant("a", "Z", 1.0);
  auto scenario = ScenarioBuilder("s", 1)
                      .prices("Z", {40.0})
                      .plant("a", 1.0, {1.0})
                      .build();
  const Fleet fleet{"Z", {a}};
  CHECK_THROWS_AS(
      payment_basic({"b", CfdType::Basic, 50.0}, a, scenario), DataError);
  CHECK_THROWS_AS(
      payment_basic({"a", CfdType::TwoWay, 50.0}, a, scenario), DataError);
  CHECK_THROWS_AS(
      payment_2way({"a", CfdType::TwoWay, 50.0}, a, Fleet{"Z", {}}, scenario),
      DataError);
  // dispatch picks the right formula
  CHECK(cfd_payment({"a", CfdType::Basic, 40.0}, a, fleet, scenario).payment ==
        doctest::Approx(0.0));
}

TEST_CASE("basic hedge: total remuneration is immune to price changes") {
  const auto plant = make_plant("a", "Z", 2.0);
  const double strike = 62.5;
  const CfdContract contract{"a", CfdType::Basic, strike};

  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> price(-50.0, 300.0);
  std::uniform_real_distribution<double> factor(0.0, 1.0);

  std::vector<double> generation(6);
  for (auto& q : generation) q = 2.0 * factor(rng);
  const double energy =
      std::accumulate(generation.begin(), generation.end(), 0.0);

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> prices(6);
    for (auto& p : prices) p = price(rng);
    auto scenario = ScenarioBuilder("s", 6)
                        .prices("Z", prices)
                        .plant("a", 2.0, generation)
                        .build();
    double revenue = 0.0;
    for (std::size_t t = 0; t < 6; ++t) revenue += prices[t] * generation[t];
    const double payment = payment_basic(contract, plant, scenario).payment;
    CHECK(revenue + payment ==
          doctest::Approx(strike * energy).epsilon(1e-9));
  }
}

TEST_CASE("two-way and financial remuneration identities") {
  const auto a = make_plant("a", "Z", 2.0);
  const auto b = make_plant("b", "Z", 3.0);
  const Fleet fleet{"Z", {a, b}};
  auto scenario = ScenarioBuilder("s", 3)
                      .prices("Z", {10.0, 80.0, 35.0})
                      .plant("a", 2.0, {1.0, 0.4, 1.8})
                      .plant("b", 3.0, {2.0, 2.9, 0.3})
                      .build();
  const double strike = 57.0;
  const double energy = total_generation(a, scenario);
  double revenue = 0.0;
  for (std::size_t t = 0; t < 3; ++t) {
    revenue += scenario.prices["Z"][t] * scenario.generation["a"][t];
  }

  const double p2 =
      payment_2way({"a", CfdType::TwoWay, strike}, a, fleet, scenario).payment;
  const double vi = market_value_plant(a, scenario);
  const double vn = market_value_zone(fleet, scenario);
  CHECK(revenue + p2 ==
        doctest::Approx(strike * energy + (vi - vn) * energy).epsilon(1e-12));

  const double strike_mw = 40.0;
  const double pf =
      payment_fin({"a", CfdType::Financial, strike_mw}, a, fleet, scenario)
          .payment;
  const double ri = revenue_per_capacity_plant(a, scenario);
  const double rn = revenue_per_capacity_zone(fleet, scenario);
  CHECK(revenue + pf ==
        doctest::Approx(2.0 * strike_mw + (ri - rn) * 2.0).epsilon(1e-12));

  // self-referencing financial contract: remuneration is exactly Q * S
  Fleet self{"Z", {a}};
  const double ps =
      payment_fin({"a", CfdType::Financial, strike_mw}, a, self, scenario)
          .payment;
  CHECK(revenue + ps == doctest::Approx(2.0 * strike_mw).epsilon(1e-9));
}

TEST_CASE("payments are linear in the strike") {
  const auto a = make_plant("a", "Z", 2.0);
  const Fleet fleet{"Z", {a}};
  auto scenario = ScenarioBuilder("s", 2)
                      .prices("Z", {30.0, 70.0})
                      .plant("a", 2.0, {1.0, 1.5})
                      .build();
  const double energy = total_generation(a, scenario);
  for (auto type : {CfdType::Basic, CfdType::TwoWay}) {
    const double low =
        cfd_payment({"a", type, 50.0}, a, fleet, scenario).payment;
    const double high =
        cfd_payment({"a", type, 51.0}, a, fleet, scenario).payment;
    CHECK(high - low == doctest::Approx(energy).epsilon(1e-12));
  }
  const double low =
      cfd_payment({"a", CfdType::Financial, 50.0}, a, fleet, scenario).payment;
  const double high =
      cfd_payment({"a", CfdType::Financial, 51.0}, a, fleet, scenario).payment;
  CHECK(high - low == doctest::Approx(2.0).epsilon(1e-12));
}
