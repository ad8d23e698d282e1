#include "cfdkit/study.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>

#include "cfdkit/csv.hpp"
#include "cfdkit/expost.hpp"
#include "cfdkit/merit_order.hpp"
#include "cfdkit/payments.hpp"

namespace fs = std::filesystem;

namespace cfdkit {

namespace {

fs::path ensemble_dir(const StudyConfig& config) {
  return config.output_dir / "ensemble";
}

void check_header(const std::vector<std::string>& header,
                  const std::vector<std::string>& expected,
                  const fs::path& path) {
  if (header != expected) {
    std::string want;
    for (const auto& column : expected) {
      if (!want.empty()) want += ",";
      want += column;
    }
    throw DataError("'" + path.string() + "': expected header '" + want + "'");
  }
}

std::set<std::string> drop_set(const StudyConfig& config) {
  return {config.drop_weather_years.begin(), config.drop_weather_years.end()};
}

// The four worlds every ex-post comparison covers: no contract plus the
// three designs.
const std::optional<CfdType> kWorlds[] = {
    std::nullopt, CfdType::Basic, CfdType::TwoWay, CfdType::Financial};

}  // namespace

PlantProfile study_plant(const StudyConfig& config,
                         const std::string& plant_id) {
  for (const auto& blueprint : config.model.plants) {
    if (blueprint.id != plant_id) continue;
    PlantProfile plant;
    plant.id = blueprint.id;
    plant.zone = blueprint.zone;
    plant.label = blueprint.label;
    plant.costs = config.model.plant_costs;
    const auto& nominal = config.model.market.invest_variants.front().capacity;
    plant.capacity = nominal.at(blueprint.id);
    return plant;
  }
  throw DataError("unknown plant '" + plant_id + "'");
}

Fleet zone_fleet(const StudyConfig& config, const std::string& zone) {
  Fleet fleet;
  fleet.zone = zone;
  for (const auto& blueprint : config.model.plants) {
    if (blueprint.zone == zone) {
      fleet.plants.push_back(study_plant(config, blueprint.id));
    }
  }
  return fleet;
}

Fleet financial_reference_fleet(const StudyConfig& config,
                                const PlantProfile& plant) {
  switch (config.financial_reference) {
    case FinancialReferenceMode::IncludeSelf:
      return zone_fleet(config, plant.zone);
    case FinancialReferenceMode::ExcludeSelf: {
      Fleet fleet = zone_fleet(config, plant.zone);
      std::erase_if(fleet.plants, [&plant](const PlantProfile& member) {
        return member.id == plant.id;
      });
      if (fleet.plants.empty()) {
        throw ConfigError(
            "financial_reference exclude_self leaves no reference plants for "
            "'" + plant.id + "'");
      }
      return fleet;
    }
    case FinancialReferenceMode::NamedPlant: {
      Fleet fleet;
      const auto reference = study_plant(config, config.financial_reference_plant);
      fleet.zone = reference.zone;
      fleet.plants.push_back(reference);
      return fleet;
    }
  }
  throw ConfigError("unknown financial reference mode");
}

void run_simulate(const StudyConfig& config) {
  const auto weather = load_weather(config);
  const auto ensemble = build_ensemble(config.model, weather);

  const fs::path dir = ensemble_dir(config);
  fs::create_directories(dir);

  std::vector<std::vector<std::string>> manifest;
  std::vector<std::vector<std::string>> capacities;
  for (std::size_t s = 0; s < ensemble.size(); ++s) {
    const Scenario& scenario = ensemble.scenarios[s];
    manifest.push_back({scenario.id, scenario.metadata.at("invest"),
                        scenario.metadata.at("weather"),
                        scenario.metadata.at("fuel_price"),
                        format_double(ensemble.weights[s])});
    for (const auto& [plant, capacity] : scenario.plant_capacity) {
      capacities.push_back({scenario.id, plant, format_double(capacity)});
    }
    write_timeseries_csv(dir / ("prices_" + scenario.id + ".csv"), "zone",
                         scenario.prices);
    write_timeseries_csv(dir / ("demand_" + scenario.id + ".csv"), "zone",
                         scenario.demand);
    write_timeseries_csv(dir / ("generation_" + scenario.id + ".csv"), "plant",
                         scenario.generation);
  }
  write_csv_rows(dir / "scenarios.csv",
                 {"scenario", "invest", "weather", "fuel_price", "weight"},
                 manifest);
  write_csv_rows(dir / "capacity.csv", {"scenario", "plant", "capacity"},
                 capacities);
}

ScenarioEnsemble load_ensemble(const StudyConfig& config) {
  const fs::path dir = ensemble_dir(config);
  const fs::path manifest_path = dir / "scenarios.csv";
  if (!fs::exists(manifest_path)) {
    throw DataError("no simulated ensemble at '" + manifest_path.string() +
                    "'; run 'cfdkit simulate' first");
  }
  const auto manifest = read_csv_rows(manifest_path);
  check_header(manifest.front(),
               {"scenario", "invest", "weather", "fuel_price", "weight"},
               manifest_path);

  const fs::path capacity_path = dir / "capacity.csv";
  const auto capacity_rows = read_csv_rows(capacity_path);
  check_header(capacity_rows.front(), {"scenario", "plant", "capacity"},
               capacity_path);
  std::map<std::string, std::map<std::string, double>> capacities;
  for (std::size_t r = 1; r < capacity_rows.size(); ++r) {
    const auto& row = capacity_rows[r];
    if (row.size() != 3) {
      throw DataError("'" + capacity_path.string() + "' row " +
                      std::to_string(r + 1) + ": expected 3 fields");
    }
    capacities[row[0]][row[1]] =
        parse_double(row[2], capacity_path.string() + " capacity");
  }

  const auto dropped = drop_set(config);
  std::vector<Scenario> scenarios;
  for (std::size_t r = 1; r < manifest.size(); ++r) {
    const auto& row = manifest[r];
    if (row.size() != 5) {
      throw DataError("'" + manifest_path.string() + "' row " +
                      std::to_string(r + 1) + ": expected 5 fields");
    }
    if (dropped.count(row[2])) continue;

    Scenario scenario;
    scenario.id = row[0];
    scenario.grid = config.model.grid;
    scenario.metadata["invest"] = row[1];
    scenario.metadata["weather"] = row[2];
    scenario.metadata["fuel_price"] = row[3];
    scenario.prices =
        read_timeseries_csv(dir / ("prices_" + scenario.id + ".csv"),
                            scenario.grid.hours)
            .series;
    scenario.demand =
        read_timeseries_csv(dir / ("demand_" + scenario.id + ".csv"),
                            scenario.grid.hours)
            .series;
    scenario.generation =
        read_timeseries_csv(dir / ("generation_" + scenario.id + ".csv"),
                            scenario.grid.hours)
            .series;
    auto it = capacities.find(scenario.id);
    if (it == capacities.end()) {
      throw DataError("'" + capacity_path.string() +
                      "': no capacities for scenario '" + scenario.id + "'");
    }
    scenario.plant_capacity = it->second;
    scenarios.push_back(std::move(scenario));
  }
  if (scenarios.empty()) {
    throw DataError("no scenarios left after dropping weather years");
  }
  return ScenarioEnsemble::uniform(std::move(scenarios));
}

void run_strike(const StudyConfig& config) {
  const auto ensemble = load_ensemble(config);
  fs::create_directories(config.output_dir);

  std::vector<std::vector<std::string>> rows;
  for (const auto& plant_id : config.contracted_plants) {
    const PlantProfile plant = study_plant(config, plant_id);
    const Fleet fleet = zone_fleet(config, plant.zone);

    std::vector<StrikeEstimate> estimates;
    estimates.push_back(strike_basic_unc(plant, ensemble));
    estimates.push_back(strike_2way_unc(plant, fleet, ensemble));
    estimates.push_back(strike_fin_unc(plant,
                                       financial_reference_fleet(config, plant),
                                       ensemble, config.drop_last_cov));

    for (const auto& term : estimates[1].diagnostics.terms) {
      if (term.exceeded) {
        std::cerr << "warning: plant '" << plant.id << "': two-way ratio '"
                  << term.name << "' second-order remainder is "
                  << format_double(term.relative * 100.0)
                  << "% of the leading term (threshold "
                  << format_double(estimates[1].diagnostics.threshold * 100.0)
                  << "%); the closed-form strike may be off\n";
      }
    }
    for (const auto& estimate : estimates) {
      rows.push_back({estimate.plant_id, estimate.zone,
                      to_string(estimate.type), format_double(estimate.cost_base),
                      format_double(estimate.markup),
                      format_double(estimate.value), estimate.unit});
    }
  }
  write_csv_rows(config.output_dir / "strikes.csv",
                 {"plant", "zone", "cfd_type", "cost_base", "markup", "value",
                  "unit"},
                 rows);
}

std::map<std::pair<std::string, CfdType>, double> load_strikes(
    const StudyConfig& config) {
  const fs::path path = config.output_dir / "strikes.csv";
  if (!fs::exists(path)) {
    throw DataError("no strikes at '" + path.string() +
                    "'; run 'cfdkit strike' first");
  }
  const auto rows = read_csv_rows(path);
  check_header(rows.front(),
               {"plant", "zone", "cfd_type", "cost_base", "markup", "value",
                "unit"},
               path);
  std::map<std::pair<std::string, CfdType>, double> strikes;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 7) {
      throw DataError("'" + path.string() + "' row " + std::to_string(r + 1) +
                      ": expected 7 fields");
    }
    const auto key = std::make_pair(row[0], parse_cfd_type(row[2]));
    const double value = parse_double(row[5], path.string() + " value");
    if (!strikes.emplace(key, value).second) {
      throw DataError("'" + path.string() + "': duplicate strike for plant '" +
                      row[0] + "' type " + row[2]);
    }
  }
  return strikes;
}

void run_expost(const StudyConfig& config) {
  const auto ensemble = load_ensemble(config);
  const auto strikes = load_strikes(config);

  struct ContractSetup {
    PlantProfile plant;
    Fleet zone;       // settlement reference for the two-way design
    Fleet financial;  // settlement reference for the financial design
  };
  std::vector<ContractSetup> setups;
  for (const auto& plant_id : config.contracted_plants) {
    ContractSetup setup;
    setup.plant = study_plant(config, plant_id);
    setup.zone = zone_fleet(config, setup.plant.zone);
    setup.financial = financial_reference_fleet(config, setup.plant);
    setups.push_back(std::move(setup));
  }

  auto strike_of = [&strikes](const std::string& plant_id, CfdType type) {
    auto it = strikes.find({plant_id, type});
    if (it == strikes.end()) {
      throw DataError("strikes.csv has no " + to_string(type) +
                      " strike for plant '" + plant_id +
                      "'; run 'cfdkit strike' first");
    }
    return it->second;
  };

  std::vector<std::vector<std::string>> payment_rows;
  std::vector<std::vector<std::string>> expost_rows;
  std::vector<std::vector<std::string>> consumer_rows;

  for (std::size_t s = 0; s < ensemble.size(); ++s) {
    const Scenario& scenario = ensemble.scenarios[s];

    // payment per (plant, world) of this scenario, for the consumer levies
    std::map<std::pair<std::string, std::string>, double> paid;

    for (const auto& setup : setups) {
      for (const auto& world : kWorlds) {
        std::optional<CfdContract> contract;
        const Fleet* fleet = &setup.zone;
        if (world) {
          contract = CfdContract{setup.plant.id, *world,
                                 strike_of(setup.plant.id, *world)};
          if (*world == CfdType::Financial) fleet = &setup.financial;
          const auto record =
              cfd_payment(*contract, setup.plant, *fleet, scenario);
          paid[{setup.plant.zone, cfd_label(world)}] += record.payment;
          payment_rows.push_back({scenario.id, record.plant_id,
                                  to_string(record.type),
                                  format_double(record.payment),
                                  format_double(record.reference_price)});
        }
        const auto result =
            cost_recovery(setup.plant, contract, *fleet, scenario);
        expost_rows.push_back({scenario.id, result.plant_id,
                               cfd_label(result.cfd),
                               format_double(result.market_revenue),
                               format_double(result.payment),
                               format_double(result.cost),
                               format_double(result.cost_recovery)});
      }
    }

    for (const auto& zone : config.model.zones) {
      for (const auto& world : kWorlds) {
        const auto it = paid.find({zone.id, cfd_label(world)});
        const double levy_total = it == paid.end() ? 0.0 : it->second;
        const auto price = consumer_price(zone.id, scenario, levy_total);
        consumer_rows.push_back({scenario.id, zone.id, cfd_label(world),
                                 format_double(price.energy_price),
                                 format_double(price.levy),
                                 format_double(price.total)});
      }
    }
  }

  fs::create_directories(config.output_dir);
  write_csv_rows(config.output_dir / "payments.csv",
                 {"scenario", "plant", "cfd_type", "payment", "reference_price"},
                 payment_rows);
  write_csv_rows(config.output_dir / "expost.csv",
                 {"scenario", "plant", "cfd_type", "market_revenue", "payment",
                  "cost", "cost_recovery"},
                 expost_rows);
  write_csv_rows(config.output_dir / "consumer.csv",
                 {"scenario", "zone", "cfd_type", "energy_price", "levy",
                  "total"},
                 consumer_rows);
}

void run_report(const StudyConfig& config) {
  const fs::path manifest_path = ensemble_dir(config) / "scenarios.csv";
  if (!fs::exists(manifest_path)) {
    throw DataError("no simulated ensemble at '" + manifest_path.string() +
                    "'; run 'cfdkit simulate' first");
  }
  const auto manifest = read_csv_rows(manifest_path);
  check_header(manifest.front(),
               {"scenario", "invest", "weather", "fuel_price", "weight"},
               manifest_path);
  std::map<std::string, std::string> weather_of;
  for (std::size_t r = 1; r < manifest.size(); ++r) {
    if (manifest[r].size() != 5) {
      throw DataError("'" + manifest_path.string() + "' row " +
                      std::to_string(r + 1) + ": expected 5 fields");
    }
    weather_of[manifest[r][0]] = manifest[r][2];
  }
  const auto dropped = drop_set(config);
  auto keep = [&](const std::string& scenario_id, const fs::path& source) {
    auto it = weather_of.find(scenario_id);
    if (it == weather_of.end()) {
      throw DataError("'" + source.string() + "' references scenario '" +
                      scenario_id + "' missing from the ensemble manifest");
    }
    return dropped.count(it->second) == 0;
  };

  const fs::path expost_path = config.output_dir / "expost.csv";
  if (!fs::exists(expost_path)) {
    throw DataError("no ex-post results at '" + expost_path.string() +
                    "'; run 'cfdkit expost' first");
  }
  const auto expost_rows = read_csv_rows(expost_path);
  check_header(expost_rows.front(),
               {"scenario", "plant", "cfd_type", "market_revenue", "payment",
                "cost", "cost_recovery"},
               expost_path);
  std::map<std::pair<std::string, std::string>, std::vector<double>> recovery;
  for (std::size_t r = 1; r < expost_rows.size(); ++r) {
    const auto& row = expost_rows[r];
    if (row.size() != 7) {
      throw DataError("'" + expost_path.string() + "' row " +
                      std::to_string(r + 1) + ": expected 7 fields");
    }
    if (!keep(row[0], expost_path)) continue;
    recovery[{row[1], row[2]}].push_back(
        parse_double(row[6], expost_path.string() + " cost_recovery"));
  }

  const fs::path consumer_path = config.output_dir / "consumer.csv";
  if (!fs::exists(consumer_path)) {
    throw DataError("no consumer prices at '" + consumer_path.string() +
                    "'; run 'cfdkit expost' first");
  }
  const auto consumer_csv = read_csv_rows(consumer_path);
  check_header(consumer_csv.front(),
               {"scenario", "zone", "cfd_type", "energy_price", "levy",
                "total"},
               consumer_path);
  std::map<std::pair<std::string, std::string>, std::vector<double>> totals;
  for (std::size_t r = 1; r < consumer_csv.size(); ++r) {
    const auto& row = consumer_csv[r];
    if (row.size() != 6) {
      throw DataError("'" + consumer_path.string() + "' row " +
                      std::to_string(r + 1) + ": expected 6 fields");
    }
    if (!keep(row[0], consumer_path)) continue;
    totals[{row[1], row[2]}].push_back(
        parse_double(row[5], consumer_path.string() + " total"));
  }

  auto mean_of = [](const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    return mean / static_cast<double>(values.size());
  };
  auto summary_fields = [](const DistributionSummary& d) {
    return std::vector<std::string>{
        format_double(d.min),   format_double(d.p6_25),
        format_double(d.p12_5), format_double(d.p25),
        format_double(d.median), format_double(d.p75),
        format_double(d.p87_5), format_double(d.p93_75),
        format_double(d.max)};
  };
  const std::vector<std::string> percentile_columns = {
      "min", "p6_25", "p12_5", "p25", "median", "p75", "p87_5", "p93_75",
      "max"};

  std::vector<std::vector<std::string>> cv_rows;
  std::vector<std::vector<std::string>> dist_rows;
  for (const auto& plant_id : config.contracted_plants) {
    const auto plant = study_plant(config, plant_id);
    for (const auto& world : kWorlds) {
      const auto it = recovery.find({plant_id, cfd_label(world)});
      if (it == recovery.end()) {
        throw DataError("'" + expost_path.string() + "' has no rows for plant '" +
                        plant_id + "' under '" + cfd_label(world) +
                        "'; run 'cfdkit expost' first");
      }
      const auto& values = it->second;
      cv_rows.push_back({plant_id, plant.zone, cfd_label(world),
                         format_double(mean_of(values)),
                         format_double(coefficient_of_variation(values)),
                         std::to_string(values.size())});
      auto row = std::vector<std::string>{plant_id, plant.zone,
                                          cfd_label(world)};
      const auto fields = summary_fields(distribution_summary(values));
      row.insert(row.end(), fields.begin(), fields.end());
      dist_rows.push_back(std::move(row));
    }
  }

  std::vector<std::vector<std::string>> consumer_cv_rows;
  std::vector<std::vector<std::string>> consumer_dist_rows;
  for (const auto& zone : config.model.zones) {
    for (const auto& world : kWorlds) {
      const auto it = totals.find({zone.id, cfd_label(world)});
      if (it == totals.end()) {
        throw DataError("'" + consumer_path.string() +
                        "' has no rows for zone '" + zone.id + "' under '" +
                        cfd_label(world) + "'; run 'cfdkit expost' first");
      }
      const auto& values = it->second;
      consumer_cv_rows.push_back({zone.id, cfd_label(world),
                                  format_double(mean_of(values)),
                                  format_double(coefficient_of_variation(values)),
                                  std::to_string(values.size())});
      auto row = std::vector<std::string>{zone.id, cfd_label(world)};
      const auto fields = summary_fields(distribution_summary(values));
      row.insert(row.end(), fields.begin(), fields.end());
      consumer_dist_rows.push_back(std::move(row));
    }
  }

  fs::create_directories(config.output_dir);
  write_csv_rows(config.output_dir / "summary_recovery_cv.csv",
                 {"plant", "zone", "cfd_type", "mean_recovery", "cv_recovery",
                  "n_scenarios"},
                 cv_rows);
  auto dist_header = std::vector<std::string>{"plant", "zone", "cfd_type"};
  dist_header.insert(dist_header.end(), percentile_columns.begin(),
                     percentile_columns.end());
  write_csv_rows(config.output_dir / "summary_recovery_dist.csv", dist_header,
                 dist_rows);
  write_csv_rows(config.output_dir / "summary_consumer_cv.csv",
                 {"zone", "cfd_type", "mean_total", "cv_total", "n_scenarios"},
                 consumer_cv_rows);
  auto consumer_dist_header = std::vector<std::string>{"zone", "cfd_type"};
  consumer_dist_header.insert(consumer_dist_header.end(),
                              percentile_columns.begin(),
                              percentile_columns.end());
  write_csv_rows(config.output_dir / "summary_consumer_dist.csv",
                 consumer_dist_header, consumer_dist_rows);
}

}  // namespace cfdkit
