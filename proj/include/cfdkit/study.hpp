#pragma once

#include <map>
#include <utility>

#include "cfdkit/config.hpp"
#include "cfdkit/strike.hpp"

namespace cfdkit {

// Study stages. Each stage reads the outputs of the previous one from the
// configured output directory and overwrites its own outputs:
//   simulate -> ensemble/  (scenario manifest, capacities, hourly series)
//   strike   -> strikes.csv
//   expost   -> payments.csv, expost.csv, consumer.csv
//   report   -> summary_*.csv
// Missing prerequisites raise DataError naming the stage to run first.

void run_simulate(const StudyConfig& config);
void run_strike(const StudyConfig& config);
void run_expost(const StudyConfig& config);
void run_report(const StudyConfig& config);

/// Read the simulated ensemble back from the output directory, skipping
/// dropped weather years and renormalising to uniform weights.
ScenarioEnsemble load_ensemble(const StudyConfig& config);

/// Strike values keyed by (plant, design), read from strikes.csv.
std::map<std::pair<std::string, CfdType>, double> load_strikes(
    const StudyConfig& config);

/// All wind plants of one zone with nominal capacities from the first invest
/// variant. Scenario-specific capacities override these wherever they matter.
Fleet zone_fleet(const StudyConfig& config, const std::string& zone);

/// The settlement reference fleet for a financial contract on `plant`,
/// according to the configured reference mode.
Fleet financial_reference_fleet(const StudyConfig& config,
                                const PlantProfile& plant);

/// The plant as used in strikes and settlement: nominal capacity from the
/// first invest variant, shared cost parameters, no own factor series.
PlantProfile study_plant(const StudyConfig& config,
                         const std::string& plant_id);

}  // namespace cfdkit
