#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfdkit/study.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string output_dir;
  bool no_price_cap = false;
  std::vector<std::string> drop_weather_years;
  bool drop_last_cov = true;
  bool drop_last_cov_set = false;
  std::string financial_reference;
};

void add_common(CLI::App* command, Options& options) {
  command->add_option("-c,--config", options.config_path, "Study file")
      ->required();
  command->add_option("-o,--out", options.output_dir,
                      "Output directory (overrides the study file)");
}

void add_analysis(CLI::App* command, Options& options) {
  command->add_option("--drop-weather-year", options.drop_weather_years,
                      "Exclude a weather year from the analysis (repeatable)");
  command->add_option(
      "--financial-reference", options.financial_reference,
      "Reference fleet for financial contracts: include_self, exclude_self or "
      "plant:<id> (overrides the study file)");
}

cfdkit::StudyConfig configure(const Options& options) {
  auto config = cfdkit::load_study_config(options.config_path);
  if (!options.output_dir.empty()) config.output_dir = options.output_dir;
  if (options.no_price_cap) config.model.market.price_cap.reset();
  if (options.drop_last_cov_set) config.drop_last_cov = options.drop_last_cov;
  if (!options.financial_reference.empty()) {
    if (options.financial_reference == "include_self") {
      config.financial_reference = cfdkit::FinancialReferenceMode::IncludeSelf;
    } else if (options.financial_reference == "exclude_self") {
      config.financial_reference = cfdkit::FinancialReferenceMode::ExcludeSelf;
    } else if (options.financial_reference.rfind("plant:", 0) == 0) {
      config.financial_reference = cfdkit::FinancialReferenceMode::NamedPlant;
      config.financial_reference_plant = options.financial_reference.substr(6);
      bool known = false;
      for (const auto& plant : config.model.plants) {
        known |= plant.id == config.financial_reference_plant;
      }
      if (!known) {
        throw cfdkit::ConfigError("--financial-reference names unknown plant '" +
                                  config.financial_reference_plant + "'");
      }
    } else {
      throw cfdkit::ConfigError(
          "--financial-reference must be include_self, exclude_self or "
          "plant:<id>");
    }
  }
  cfdkit::apply_weather_drops(config, options.drop_weather_years);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cfdkit: scenario ensembles, strike prices and ex-post analysis of "
      "two-way contracts for difference for wind power"};
  app.require_subcommand(1);

  Options options;
  std::function<void(const cfdkit::StudyConfig&)> stage;

  auto* simulate = app.add_subcommand(
      "simulate", "Simulate the scenario ensemble and write it out");
  add_common(simulate, options);
  simulate->add_flag("--no-price-cap", options.no_price_cap,
                     "Clear without the price cap");
  simulate->callback([&stage] { stage = cfdkit::run_simulate; });

  auto* strike = app.add_subcommand(
      "strike", "Compute strike prices for all contracted plants");
  add_common(strike, options);
  add_analysis(strike, options);
  strike
      ->add_flag("--drop-last-cov,!--no-drop-last-cov", options.drop_last_cov,
                 "Drop (default) or keep the trailing weight covariance of "
                 "the financial strike estimator")
      ->each([&options](const std::string&) { options.drop_last_cov_set = true; });
  strike->callback([&stage] { stage = cfdkit::run_strike; });

  auto* expost = app.add_subcommand(
      "expost", "Settle contracts and evaluate cost recovery per scenario");
  add_common(expost, options);
  add_analysis(expost, options);
  expost->callback([&stage] { stage = cfdkit::run_expost; });

  auto* report = app.add_subcommand(
      "report", "Summarise cost recovery and consumer prices");
  add_common(report, options);
  add_analysis(report, options);
  report->callback([&stage] { stage = cfdkit::run_report; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  try {
    stage(configure(options));
  } catch (const cfdkit::ConfigError& error) {
    std::cerr << "config error: " << error.what() << "\n";
    return 2;
  } catch (const cfdkit::DataError& error) {
    std::cerr << "data error: " << error.what() << "\n";
    return 3;
  } catch (const cfdkit::DomainError& error) {
    std::cerr << "data error: " << error.what() << "\n";
    return 3;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
