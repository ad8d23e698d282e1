#include "cfdkit/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>

#include "cfdkit/csv.hpp"

namespace cfdkit {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t");
  return text.substr(begin, end - begin + 1);
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

void check_name(const std::string& name, const std::string& what) {
  if (!valid_name(name)) {
    throw ConfigError(what + " '" + name +
                      "' must consist of letters, digits, '_', '-' or '.'");
  }
}

// All key = value pairs of a study file; consumed entries are erased so that
// finish() can report anything unexpected.
class KeyValueStore {
 public:
  explicit KeyValueStore(const std::filesystem::path& path) : path_(path) {
    std::ifstream stream(path);
    if (!stream) {
      throw ConfigError("cannot open study file '" + path.string() + "'");
    }
    std::string line;
    std::size_t number = 0;
    while (std::getline(stream, line)) {
      ++number;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto equals = line.find('=');
      if (equals == std::string::npos) {
        throw ConfigError(path.string() + ":" + std::to_string(number) +
                          ": expected 'key = value'");
      }
      const std::string key = trim(line.substr(0, equals));
      const std::string value = trim(line.substr(equals + 1));
      if (key.empty()) {
        throw ConfigError(path.string() + ":" + std::to_string(number) +
                          ": empty key");
      }
      if (!entries_.emplace(key, value).second) {
        throw ConfigError(path.string() + ":" + std::to_string(number) +
                          ": duplicate key '" + key + "'");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string value = it->second;
    entries_.erase(it);
    return value;
  }

  std::string require(const std::string& key) {
    auto value = take(key);
    if (!value) {
      throw ConfigError(path_.string() + ": missing required key '" + key +
                        "'");
    }
    return *value;
  }

  void finish() const {
    if (entries_.empty()) return;
    std::string listing;
    for (const auto& [key, value] : entries_) {
      if (!listing.empty()) listing += ", ";
      listing += "'" + key + "'";
      if (listing.size() > 200) {
        listing += ", ...";
        break;
      }
    }
    throw ConfigError(path_.string() + ": unknown keys: " + listing);
  }

 private:
  std::filesystem::path path_;
  std::map<std::string, std::string> entries_;
};

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const std::string item =
        trim(value.substr(start, comma == std::string::npos
                                     ? std::string::npos
                                     : comma - start));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

double config_double(const std::string& value, const std::string& key) {
  try {
    return parse_double(value, key);
  } catch (const DataError& error) {
    throw ConfigError(error.what());
  }
}

std::size_t config_index(const std::string& value, const std::string& key) {
  try {
    return parse_index(value, key);
  } catch (const DataError& error) {
    throw ConfigError(error.what());
  }
}

bool config_bool(const std::string& value, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

CostParameters read_costs(KeyValueStore& store) {
  CostParameters costs;
  costs.variable_cost =
      config_double(store.require("variable_cost"), "variable_cost");
  costs.invest_cost = config_double(store.require("invest_cost"), "invest_cost");
  if (costs.variable_cost < 0.0 || costs.invest_cost < 0.0) {
    throw ConfigError("cost parameters must be non-negative");
  }
  const auto direct = store.take("annuity_factor");
  const auto rate = store.take("interest_rate");
  const auto years = store.take("lifetime_years");
  if (direct && (rate || years)) {
    throw ConfigError(
        "set either annuity_factor or interest_rate with lifetime_years, not "
        "both");
  }
  if (direct) {
    costs.annuity_factor = config_double(*direct, "annuity_factor");
    if (costs.annuity_factor < 0.0) {
      throw ConfigError("annuity_factor must be non-negative");
    }
  } else if (rate && years) {
    costs.annuity_factor = annuity_factor(
        config_double(*rate, "interest_rate"),
        static_cast<int>(config_index(*years, "lifetime_years")));
  } else {
    throw ConfigError(
        "set annuity_factor or both interest_rate and lifetime_years");
  }
  return costs;
}

std::vector<DemandTier> read_demand_tiers(KeyValueStore& store,
                                          double shed_price) {
  std::vector<DemandTier> tiers;
  const auto value = store.take("demand_response");
  if (!value) return tiers;
  double total_share = 0.0;
  double last_voll = 0.0;
  for (const auto& item : parse_list(*value)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("demand_response: expected '<voll>:<share>', got '" +
                        item + "'");
    }
    DemandTier tier;
    tier.value_of_lost_load =
        config_double(trim(item.substr(0, colon)), "demand_response voll");
    tier.share = config_double(trim(item.substr(colon + 1)),
                               "demand_response share");
    if (tier.value_of_lost_load <= last_voll) {
      throw ConfigError(
          "demand_response tiers must have strictly ascending positive values "
          "of lost load");
    }
    if (tier.value_of_lost_load > shed_price) {
      throw ConfigError("demand_response tier at " +
                        format_double(tier.value_of_lost_load) +
                        " exceeds shed_price");
    }
    if (tier.share <= 0.0 || tier.share > 1.0) {
      throw ConfigError("demand_response shares must lie in (0, 1]");
    }
    last_voll = tier.value_of_lost_load;
    total_share += tier.share;
    tiers.push_back(tier);
  }
  if (total_share > 1.0 + 1e-12) {
    throw ConfigError("demand_response shares must not sum beyond 1");
  }
  return tiers;
}

}  // namespace

StudyConfig load_study_config(const std::filesystem::path& path) {
  KeyValueStore store(path);
  StudyConfig config;
  config.base_dir = path.has_parent_path() ? path.parent_path()
                                           : std::filesystem::path(".");

  auto& model = config.model;
  if (auto hours = store.take("hours")) {
    model.grid.hours = config_index(*hours, "hours");
    if (model.grid.hours == 0) throw ConfigError("hours must be positive");
  }

  std::set<std::string> zone_ids;
  for (const auto& id : parse_list(store.require("zones"))) {
    check_name(id, "zone");
    if (!zone_ids.insert(id).second) {
      throw ConfigError("duplicate zone '" + id + "'");
    }
    BiddingZone zone{id, id};
    if (auto name = store.take("zone." + id + ".name")) zone.name = *name;
    model.zones.push_back(zone);
  }
  if (model.zones.empty()) throw ConfigError("zones must not be empty");

  std::set<std::string> asset_ids;
  for (const auto& id : parse_list(store.require("plants"))) {
    check_name(id, "plant");
    if (!asset_ids.insert(id).second) {
      throw ConfigError("duplicate plant '" + id + "'");
    }
    PlantBlueprint plant;
    plant.id = id;
    plant.zone = store.require("plant." + id + ".zone");
    if (!zone_ids.count(plant.zone)) {
      throw ConfigError("plant '" + id + "' references unknown zone '" +
                        plant.zone + "'");
    }
    if (auto label = store.take("plant." + id + ".label")) {
      plant.label = parse_profile_label(*label);
    }
    model.plants.push_back(plant);
  }
  if (model.plants.empty()) throw ConfigError("plants must not be empty");

  model.plant_costs = read_costs(store);

  if (auto units = store.take("units")) {
    for (const auto& id : parse_list(*units)) {
      check_name(id, "unit");
      if (!asset_ids.insert(id).second) {
        throw ConfigError("unit '" + id + "' clashes with another unit or plant");
      }
      UnitSpec spec;
      spec.id = id;
      spec.zone = store.require("unit." + id + ".zone");
      if (!zone_ids.count(spec.zone)) {
        throw ConfigError("unit '" + id + "' references unknown zone '" +
                          spec.zone + "'");
      }
      const auto cost = store.take("unit." + id + ".marginal_cost");
      const auto efficiency = store.take("unit." + id + ".fuel_efficiency");
      if (cost && efficiency) {
        throw ConfigError("unit '" + id +
                          "': set either marginal_cost or fuel_efficiency");
      }
      if (cost) {
        spec.marginal_cost = config_double(*cost, "unit." + id + ".marginal_cost");
      } else if (efficiency) {
        spec.fuel_efficiency =
            config_double(*efficiency, "unit." + id + ".fuel_efficiency");
        if (*spec.fuel_efficiency <= 0.0) {
          throw ConfigError("unit '" + id + "': fuel efficiency must be positive");
        }
      } else {
        throw ConfigError("unit '" + id +
                          "': set marginal_cost or fuel_efficiency");
      }
      model.units.push_back(spec);
    }
  }

  auto& market = model.market;
  if (auto cap = store.take("price_cap")) {
    market.price_cap = config_double(*cap, "price_cap");
    if (*market.price_cap <= 0.0) {
      throw ConfigError("price_cap must be positive");
    }
  }
  if (auto shed = store.take("shed_price")) {
    market.shed_price = config_double(*shed, "shed_price");
  }
  if (market.shed_price <= 0.0) {
    throw ConfigError("shed_price must be positive");
  }
  for (const auto& level : parse_list(store.require("fuel_price_levels"))) {
    const double fuel = config_double(level, "fuel_price_levels");
    if (fuel < 0.0) throw ConfigError("fuel prices must be non-negative");
    market.fuel_price_levels.push_back(fuel);
  }
  if (market.fuel_price_levels.empty()) {
    throw ConfigError("fuel_price_levels must not be empty");
  }
  model.demand_tiers = read_demand_tiers(store, market.shed_price);

  std::set<std::string> weather_names;
  for (const auto& name : parse_list(store.require("weather_variants"))) {
    check_name(name, "weather variant");
    if (!weather_names.insert(name).second) {
      throw ConfigError("duplicate weather variant '" + name + "'");
    }
    WeatherSource source;
    source.name = name;
    source.capacity_factors =
        config.base_dir /
        store.require("weather." + name + ".capacity_factors");
    source.demand = config.base_dir / store.require("weather." + name + ".demand");
    for (const auto& file : {source.capacity_factors, source.demand}) {
      if (!std::filesystem::exists(file)) {
        throw ConfigError("weather variant '" + name + "' references missing file '" +
                          file.string() + "'");
      }
    }
    config.weather_sources.push_back(source);
  }
  if (config.weather_sources.empty()) {
    throw ConfigError("weather_variants must not be empty");
  }

  std::set<std::string> invest_names;
  for (const auto& name : parse_list(store.require("invest_variants"))) {
    check_name(name, "invest variant");
    if (!invest_names.insert(name).second) {
      throw ConfigError("duplicate invest variant '" + name + "'");
    }
    InvestVariant mix;
    mix.name = name;
    for (const auto& plant : model.plants) {
      const std::string key = "invest." + name + ".capacity." + plant.id;
      mix.capacity[plant.id] = config_double(store.require(key), key);
      if (mix.capacity[plant.id] <= 0.0) {
        throw ConfigError(key + ": plant capacity must be positive");
      }
    }
    for (const auto& unit : model.units) {
      const std::string key = "invest." + name + ".capacity." + unit.id;
      mix.capacity[unit.id] = config_double(store.require(key), key);
      if (mix.capacity[unit.id] < 0.0) {
        throw ConfigError(key + ": unit capacity must not be negative");
      }
    }
    market.invest_variants.push_back(mix);
  }
  if (market.invest_variants.empty()) {
    throw ConfigError("invest_variants must not be empty");
  }

  if (auto contracted = store.take("contracted_plants")) {
    for (const auto& id : parse_list(*contracted)) {
      bool known = false;
      for (const auto& plant : model.plants) known |= plant.id == id;
      if (!known) {
        throw ConfigError("contracted plant '" + id + "' is not a plant");
      }
      config.contracted_plants.push_back(id);
    }
  }

  if (auto reference = store.take("financial_reference")) {
    if (*reference == "include_self") {
      config.financial_reference = FinancialReferenceMode::IncludeSelf;
    } else if (*reference == "exclude_self") {
      config.financial_reference = FinancialReferenceMode::ExcludeSelf;
    } else if (reference->rfind("plant:", 0) == 0) {
      config.financial_reference = FinancialReferenceMode::NamedPlant;
      config.financial_reference_plant = reference->substr(6);
      bool known = false;
      for (const auto& plant : model.plants) {
        known |= plant.id == config.financial_reference_plant;
      }
      if (!known) {
        throw ConfigError("financial_reference names unknown plant '" +
                          config.financial_reference_plant + "'");
      }
    } else {
      throw ConfigError(
          "financial_reference must be include_self, exclude_self or "
          "plant:<id>");
    }
  }

  if (auto drop = store.take("drop_last_cov")) {
    config.drop_last_cov = config_bool(*drop, "drop_last_cov");
  }
  if (auto out = store.take("output_dir")) {
    if (out->empty()) throw ConfigError("output_dir must not be empty");
    config.output_dir = *out;
  }
  std::vector<std::string> drops;
  if (auto value = store.take("drop_weather_years")) {
    drops = parse_list(*value);
  }

  store.finish();
  apply_weather_drops(config, drops);
  return config;
}

void apply_weather_drops(StudyConfig& config,
                         const std::vector<std::string>& years) {
  for (const auto& year : years) {
    bool known = false;
    for (const auto& source : config.weather_sources) {
      known |= source.name == year;
    }
    if (!known) {
      throw ConfigError("cannot drop unknown weather year '" + year + "'");
    }
    if (std::find(config.drop_weather_years.begin(),
                  config.drop_weather_years.end(),
                  year) == config.drop_weather_years.end()) {
      config.drop_weather_years.push_back(year);
    }
  }
  if (config.drop_weather_years.size() >= config.weather_sources.size()) {
    throw ConfigError("dropping every weather year leaves no scenarios");
  }
}

std::vector<WeatherVariant> load_weather(const StudyConfig& config) {
  std::vector<WeatherVariant> variants;
  const auto& model = config.model;
  for (const auto& source : config.weather_sources) {
    WeatherVariant variant;
    variant.name = source.name;

    auto factors = read_timeseries_csv(source.capacity_factors, model.grid.hours);
    if (factors.key_column != "plant") {
      throw DataError("'" + source.capacity_factors.string() +
                      "': expected key column 'plant', got '" +
                      factors.key_column + "'");
    }
    for (const auto& plant : model.plants) {
      auto it = factors.series.find(plant.id);
      if (it == factors.series.end()) {
        throw DataError("'" + source.capacity_factors.string() +
                        "': no capacity factors for plant '" + plant.id + "'");
      }
      for (std::size_t t = 0; t < it->second.size(); ++t) {
        const double f = it->second[t];
        if (f < 0.0 || f > 1.0) {
          throw DataError("'" + source.capacity_factors.string() +
                          "': capacity factor " + format_double(f) +
                          " for plant '" + plant.id + "' at hour " +
                          std::to_string(t) + " outside [0, 1]");
        }
      }
    }
    for (const auto& [key, series] : factors.series) {
      bool known = false;
      for (const auto& plant : model.plants) known |= plant.id == key;
      if (!known) {
        throw DataError("'" + source.capacity_factors.string() +
                        "': unknown plant '" + key + "'");
      }
    }
    variant.capacity_factors = std::move(factors.series);

    auto demand = read_timeseries_csv(source.demand, model.grid.hours);
    if (demand.key_column != "zone") {
      throw DataError("'" + source.demand.string() +
                      "': expected key column 'zone', got '" +
                      demand.key_column + "'");
    }
    for (const auto& zone : model.zones) {
      auto it = demand.series.find(zone.id);
      if (it == demand.series.end()) {
        throw DataError("'" + source.demand.string() +
                        "': no demand for zone '" + zone.id + "'");
      }
      for (std::size_t t = 0; t < it->second.size(); ++t) {
        if (it->second[t] < 0.0) {
          throw DataError("'" + source.demand.string() + "': negative demand for zone '" +
                          zone.id + "' at hour " + std::to_string(t));
        }
      }
    }
    for (const auto& [key, series] : demand.series) {
      bool known = false;
      for (const auto& zone : model.zones) known |= zone.id == key;
      if (!known) {
        throw DataError("'" + source.demand.string() + "': unknown zone '" +
                        key + "'");
      }
    }
    variant.demand = std::move(demand.series);
    variants.push_back(std::move(variant));
  }
  return variants;
}

}  // namespace cfdkit
