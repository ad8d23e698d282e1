#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cfdkit/strike.hpp"
#include "helpers.hpp"

using namespace cfdkit;
using testutil::ScenarioBuilder;
using testutil::make_plant;

namespace {

// Deterministic fixture: lcoe(a) = 50, v_a = 55, v_n = 45.
struct MarkdownFixture {
  CostParameters costs{0.0, 1.0, 150.0};  // A*M = 150, Q = 2 -> fixed cost 300
  PlantProfile a = make_plant("a", "Z", 2.0, costs);
  PlantProfile b = make_plant("b", "Z", 1.0, costs);
  Fleet fleet{"Z", {a, b}};
  Scenario scenario = ScenarioBuilder("s", 2)
                          .prices("Z", {30.0, 60.0})
                          .plant("a", 2.0, {1.0, 5.0})
                          .plant("b", 1.0, {4.0, 0.0})
                          .build();
};

}  // namespace

TEST_CASE("deterministic basic strike is the lcoe") {
  const auto plant = make_plant("a", "Z", 1.0, {1.0, 1.0, 100.0});
  auto scenario = ScenarioBuilder("s", 1)
                      .prices("Z", {70.0})
                      .plant("a", 1.0, {1.0})
                      .build();
  const auto estimate = strike_basic_det(plant, scenario);
  CHECK(estimate.value == doctest::Approx(101.0));
  CHECK(estimate.markup == 0.0);
  CHECK(estimate.value == doctest::Approx(estimate.cost_base + estimate.markup));
  CHECK(estimate.unit == "EUR/MWh");

  auto idle = ScenarioBuilder("s", 1).prices("Z", {70.0}).plant("a", 1.0, {0.0}).build();
  CHECK_THROWS_AS(strike_basic_det(plant, idle), DomainError);
}

TEST_CASE("deterministic two-way strike marks down high own value") {
  MarkdownFixture fix;
  CHECK(market_value_plant(fix.a, fix.scenario) == doctest::Approx(55.0));
  CHECK(market_value_zone(fix.fleet, fix.scenario) == doctest::Approx(45.0));
  CHECK(lcoe(fix.a, fix.scenario) == doctest::Approx(50.0));

  const auto estimate = strike_2way_det(fix.a, fix.fleet, fix.scenario);
  CHECK(estimate.cost_base == doctest::Approx(50.0));
  CHECK(estimate.markup == doctest::Approx(-10.0));
  CHECK(estimate.value == doctest::Approx(40.0));

  // single-plant fleet: no markup
  Fleet solo{"Z", {fix.a}};
  const auto neutral = strike_2way_det(fix.a, solo, fix.scenario);
  CHECK(neutral.markup == doctest::Approx(0.0));
  CHECK(neutral.value == doctest::Approx(50.0));

  CHECK_THROWS_AS(strike_2way_det(fix.b, solo, fix.scenario), DataError);
}

TEST_CASE("deterministic two-way strike marks up low own value") {
  const CostParameters costs{0.0, 1.0, 75.0};  // A*M = 75, Q = 2 -> 150 fixed
  const auto a = make_plant("a", "Z", 2.0, costs);
  const auto b = make_plant("b", "Z", 1.0, costs);
  const Fleet fleet{"Z", {a, b}};
  auto scenario = ScenarioBuilder("s", 2)
                      .prices("Z", {30.0, 60.0})
                      .plant("a", 2.0, {2.0, 1.0})
                      .plant("b", 1.0, {0.0, 1.0})
                      .build();
  CHECK(lcoe(a, scenario) == doctest::Approx(50.0));
  CHECK(market_value_plant(a, scenario) == doctest::Approx(40.0));
  CHECK(market_value_zone(fleet, scenario) == doctest::Approx(45.0));
  const auto estimate = strike_2way_det(a, fleet, scenario);
  CHECK(estimate.value == doctest::Approx(55.0));
  CHECK(estimate.markup == doctest::Approx(5.0));
}

TEST_CASE("deterministic financial strike") {
  const CostParameters costs{0.0, 1.0, 100000.0};
  const auto a = make_plant("a", "Z", 1.0, costs);
  const auto b = make_plant("b", "Z", 1.0, costs);
  const Fleet fleet{"Z", {a, b}};
  auto scenario = ScenarioBuilder("s", 1)
                      .prices("Z", {95000.0})
                      .plant("a", 1.0, {1.0})
                      .plant("b", 1.0, {85000.0 / 95000.0})
                      .build();
  CHECK(revenue_per_capacity_plant(a, scenario) == doctest::Approx(95000.0));
  CHECK(revenue_per_capacity_zone(fleet, scenario) == doctest::Approx(90000.0));
  const auto estimate = strike_fin_det(a, fleet, scenario);
  CHECK(estimate.cost_base == doctest::Approx(100000.0));
  CHECK(estimate.markup == doctest::Approx(-5000.0));
  CHECK(estimate.value == doctest::Approx(95000.0));
  CHECK(estimate.unit == "EUR/MW");

  Fleet solo{"Z", {a}};
  CHECK(strike_fin_det(a, solo, scenario).value ==
        doctest::Approx(100000.0));  // C/Q with no markup
}

TEST_CASE("basic strike under uncertainty pools factors before dividing") {
  const CostParameters costs{0.0, 1.0, 100.0};
  const auto plant = make_plant("a", "Z", 1.0, costs);
  auto low = ScenarioBuilder("s1", 2)
                 .prices("Z", {10.0, 10.0})
                 .plant("a", 1.0, {0.4, 0.4})
                 .build();
  auto high = ScenarioBuilder("s2", 2)
                  .prices("Z", {10.0, 10.0})
                  .plant("a", 1.0, {0.6, 0.6})
                  .build();
  const auto ensemble = ScenarioEnsemble::uniform({low, high});
  const auto estimate = strike_basic_unc(plant, ensemble);
  CHECK(estimate.value == doctest::Approx(100.0).epsilon(1e-12));
  // mean of the per-scenario lcoes (125 and 83.33) would be different
  const double lcoe_mean = 0.5 * (lcoe(plant, low) + lcoe(plant, high));
  CHECK(lcoe_mean == doctest::Approx(104.1666667).epsilon(1e-6));
  CHECK(estimate.value != doctest::Approx(lcoe_mean).epsilon(1e-3));

  auto idle1 = ScenarioBuilder("s1", 2).prices("Z", {1.0, 1.0}).plant("a", 1.0, {0.0, 0.0}).build();
  auto idle2 = ScenarioBuilder("s2", 2).prices("Z", {1.0, 1.0}).plant("a", 1.0, {0.0, 0.0}).build();
  CHECK_THROWS_AS(
      strike_basic_unc(plant, ScenarioEnsemble::uniform({idle1, idle2})),
      DomainError);
}

TEST_CASE("single-scenario ensembles reproduce deterministic strikes") {
  // different capacities per plant so fleet weighting actually matters
  const CostParameters costs{1.2, 0.08, 1500.0};
  const auto a = make_plant("a", "Z", 3.0, costs);
  const auto b = make_plant("b", "Z", 7.0, costs);
  const Fleet fleet{"Z", {a, b}};
  auto scenario = ScenarioBuilder("s", 3)
                      .prices("Z", {12.0, 85.0, 40.0})
                      .plant("a", 3.0, {2.4, 0.3, 1.8})
                      .plant("b", 7.0, {1.4, 6.3, 2.8})
                      .build();
  const auto ensemble = ScenarioEnsemble::uniform({scenario});

  for (const auto& plant : {a, b}) {
    CHECK(strike_basic_unc(plant, ensemble).value ==
          doctest::Approx(strike_basic_det(plant, scenario).value)
              .epsilon(1e-9));
    CHECK(strike_2way_unc(plant, fleet, ensemble).value ==
          doctest::Approx(strike_2way_det(plant, fleet, scenario).value)
              .epsilon(1e-9));
    for (bool drop : {true, false}) {
      CHECK(strike_fin_unc(plant, fleet, ensemble, drop).value ==
            doctest::Approx(strike_fin_det(plant, fleet, scenario).value)
                .epsilon(1e-9));
    }
  }
  // Taylor remainders vanish with a single scenario
  CHECK(strike_2way_unc(a, fleet, ensemble).diagnostics.ok());
}

TEST_CASE("uniform prices imply zero two-way markup") {
  const CostParameters costs{0.0, 1.0, 10.0};
  const auto a = make_plant("a", "Z", 1.0, costs);
  const auto b = make_plant("b", "Z", 2.0, costs);
  const Fleet fleet{"Z", {a, b}};
  auto s1 = ScenarioBuilder("s1", 2)
                .prices("Z", {42.0, 42.0})
                .plant("a", 1.0, {0.3, 0.9})
                .plant("b", 2.0, {1.8, 0.2})
                .build();
  auto s2 = ScenarioBuilder("s2", 2)
                .prices("Z", {42.0, 42.0})
                .plant("a", 1.0, {0.5, 0.1})
                .plant("b", 2.0, {0.4, 1.6})
                .build();
  const auto ensemble = ScenarioEnsemble::uniform({s1, s2});
  CHECK(strike_2way_unc(a, fleet, ensemble).markup ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("a fleet-average plant earns no markup") {
  const CostParameters costs{0.5, 0.2, 40.0};
  const auto a = make_plant("a", "Z", 2.0, costs);
  const auto b = make_plant("b", "Z", 3.0, costs);
  const Fleet fleet{"Z", {a, b}};
  // both plants share one profile per scenario, so each equals the average
  auto s1 = ScenarioBuilder("s1", 2)
                .prices("Z", {15.0, 75.0})
                .plant("a", 2.0, {0.6, 1.8})
                .plant("b", 3.0, {0.9, 2.7})
                .build();
  auto s2 = ScenarioBuilder("s2", 2)
                .prices("Z", {55.0, 5.0})
                .plant("a", 2.0, {1.2, 0.4})
                .plant("b", 3.0, {1.8, 0.6})
                .build();
  const auto ensemble = ScenarioEnsemble::uniform({s1, s2});
  CHECK(strike_2way_unc(a, fleet, ensemble).markup ==
        doctest::Approx(0.0).epsilon(1e-9));
  for (bool drop : {true, false}) {
    CHECK(strike_fin_unc(a, fleet, ensemble, drop).markup ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("price scaling moves markups linearly and spares cost bases") {
  const CostParameters costs{1.0, 0.1, 200.0};
  const auto a = make_plant("a", "Z", 2.0, costs);
  const auto b = make_plant("b", "Z", 5.0, costs);
  const Fleet fleet{"Z", {a, b}};
  auto s1 = ScenarioBuilder("s1", 2)
                .prices("Z", {20.0, 90.0})
                .plant("a", 2.0, {1.0, 0.4})
                .plant("b", 5.0, {1.0, 4.0})
                .build();
  auto s2 = ScenarioBuilder("s2", 2)
                .prices("Z", {60.0, 10.0})
                .plant("a", 2.0, {1.6, 0.2})
                .plant("b", 5.0, {2.0, 3.0})
                .build();
  auto ensemble = ScenarioEnsemble::uniform({s1, s2});
  auto scaled = ensemble;
  for (auto& scenario : scaled.scenarios) {
    for (auto& p : scenario.prices["Z"]) p *= 2.5;
  }

  const auto twoway = strike_2way_unc(a, fleet, ensemble);
  const auto twoway_scaled = strike_2way_unc(a, fleet, scaled);
  CHECK(twoway_scaled.markup == doctest::Approx(2.5 * twoway.markup));
  CHECK(twoway_scaled.cost_base == doctest::Approx(twoway.cost_base));

  const auto fin = strike_fin_unc(a, fleet, ensemble);
  const auto fin_scaled = strike_fin_unc(a, fleet, scaled);
  CHECK(fin_scaled.markup == doctest::Approx(2.5 * fin.markup));
  CHECK(fin_scaled.cost_base == doctest::Approx(fin.cost_base));

  CHECK(strike_basic_unc(a, scaled).value ==
        doctest::Approx(strike_basic_unc(a, ensemble).value).epsilon(1e-12));
}

TEST_CASE("financial strike with constant weights equals the scenario mean") {
  const CostParameters costs{2.0, 0.12, 900.0};
  const auto a = make_plant("a", "Z", 2.0, costs);
  const auto b = make_plant("b", "Z", 3.0, costs);
  const Fleet fleet{"Z", {a, b}};

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> price(5.0, 120.0);
  std::uniform_real_distribution<double> factor(0.05, 0.95);
  std::vector<Scenario> scenarios;
  for (int s = 0; s < 7; ++s) {
    ScenarioBuilder builder("s" + std::to_string(s), 4);
    std::vector<double> p(4), qa(4), qb(4);
    for (std::size_t t = 0; t < 4; ++t) {
      p[t] = price(rng);
      qa[t] = factor(rng) * 2.0;
      qb[t] = factor(rng) * 3.0;
    }
    builder.prices("Z", p).plant("a", 2.0, qa).plant("b", 3.0, qb);
    scenarios.push_back(builder.build());
  }
  const auto ensemble = ScenarioEnsemble::uniform(scenarios);

  double oracle = 0.0;
  for (const auto& scenario : ensemble.scenarios) {
    oracle += strike_fin_det(a, fleet, scenario).value;
  }
  oracle /= static_cast<double>(ensemble.size());

  for (bool drop : {true, false}) {
    CHECK(strike_fin_unc(a, fleet, ensemble, drop).value ==
          doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("two-way strike tracks its oracle and flags bad approximations") {
  const CostParameters costs{1.0, 0.07, 1100.0};
  const auto a = make_plant("a", "Z", 2.0, costs);
  const auto b = make_plant("b", "Z", 3.0, costs);
  const Fleet fleet{"Z", {a, b}};

  auto build = [&](double spread) {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> price(20.0, 60.0);
    std::uniform_real_distribution<double> jitter(1.0 - spread, 1.0 + spread);
    std::vector<Scenario> scenarios;
    for (int s = 0; s < 6; ++s) {
      ScenarioBuilder builder("s" + std::to_string(s), 4);
      std::vector<double> p(4), qa(4), qb(4);
      const double year = jitter(rng);
      for (std::size_t t = 0; t < 4; ++t) {
        p[t] = price(rng);
        qa[t] = 0.8 * year * 2.0;
        qb[t] = 0.6 * year * 3.0;
      }
      builder.prices("Z", p).plant("a", 2.0, qa).plant("b", 3.0, qb);
      scenarios.push_back(builder.build());
    }
    return ScenarioEnsemble::uniform(scenarios);
  };

  // mild factor variation: estimate close to the oracle, no warnings
  const auto mild = build(0.05);
  const auto estimate = strike_2way_unc(a, fleet, mild);
  double oracle = 0.0;
  for (const auto& scenario : mild.scenarios) {
    oracle += strike_2way_det(a, fleet, scenario).value;
  }
  oracle /= static_cast<double>(mild.size());
  CHECK(std::abs(estimate.value - oracle) <= 0.05 * std::abs(oracle));
  CHECK(estimate.diagnostics.ok());
  CHECK(estimate.diagnostics.terms.size() == 3);

  // extreme factor variation: the remainder estimate must fire
  const auto wild = build(0.95);
  CHECK(!strike_2way_unc(a, fleet, wild).diagnostics.ok());
}
