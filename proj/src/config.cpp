// SPDX-License-Identifier: Apache-2.0
#include "cfpon/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <type_traits>
#include <sstream>

#include "cfpon/errors.hpp"

namespace cfpon {

using nlohmann::json;

namespace {

// Reads typed fields out of one JSON object and remembers which keys were
// consumed, so leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& doc, std::string name) : doc_(doc), name_(std::move(name)) {
    if (!doc_.is_object()) throw ConfigError(name_ + ": expected an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    const auto it = doc_.find(key);
    if (it == doc_.end() || it->is_null()) return;
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!it->is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_unsigned_v<T>) {
        if (!it->is_number_unsigned()) throw ConfigError("");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!it->is_number()) throw ConfigError("");
      }
      out = it->template get<T>();
    } catch (const std::exception&) {
      throw ConfigError(field(key) + ": wrong type");
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    const auto it = doc_.find(key);
    return it == doc_.end() || it->is_null() ? nullptr : &*it;
  }

  std::string field(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

  void reject_unknown() const {
    for (const auto& item : doc_.items()) {
      if (!seen_.count(item.key())) throw ConfigError(field(item.key()) + ": unknown field");
    }
  }

 private:
  const json& doc_;
  std::string name_;
  std::set<std::string> seen_;
};

}  // namespace

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::kBaseline:
      return "baseline";
    case Algo::kGreedy:
      return "greedy";
    case Algo::kGreedySleep:
      return "greedy+sleep";
    case Algo::kExhaustive:
      return "exhaustive";
    case Algo::kSmallCell:
      return "smallcell";
  }
  return "?";
}

Algo parse_algo(const std::string& name) {
  for (Algo a : {Algo::kBaseline, Algo::kGreedy, Algo::kGreedySleep, Algo::kExhaustive,
                 Algo::kSmallCell}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("algos: unknown algorithm '" + name +
                    "' (expected baseline, greedy, greedy+sleep, exhaustive or smallcell)");
}

std::vector<Algo> parse_algo_list(const std::string& csv) {
  std::vector<Algo> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_algo(item));
  }
  if (out.empty()) throw ConfigError("algos: list is empty");
  return out;
}

void ExperimentConfig::validate() const {
  scenario.validate();
  topology.validate();
  power.validate();
  if (fronthaul_streams && *fronthaul_streams < 1) {
    throw ConfigError("fronthaul.streams: must be >= 1");
  }
  Split72Config fh = fronthaul;
  fh.streams = resolved_streams();
  fh.validate();
  if (!(per_ru_max_w > 0.0) || !std::isfinite(per_ru_max_w)) {
    throw ConfigError("radio.per_ru_max_w: must be > 0");
  }
  if (clusters.mode == ClusterMode::kCfTopM && clusters.top_m < 1) {
    throw ConfigError("radio.cluster_mode: cf_top_m requires M >= 1");
  }
  if (!(target_se >= 0.0) || !std::isfinite(target_se)) {
    throw ConfigError("target_se: must be finite and >= 0");
  }
  if (algos.empty()) throw ConfigError("algos: list is empty");
  if (se_grid.empty()) throw ConfigError("sweep.se_target: grid is empty");
  for (std::size_t i = 0; i < se_grid.size(); ++i) {
    if (!(se_grid[i] >= 0.0) || !std::isfinite(se_grid[i])) {
      throw ConfigError("sweep.se_target: values must be finite and >= 0");
    }
    if (i > 0 && !(se_grid[i] > se_grid[i - 1])) {
      throw ConfigError("sweep.se_target: grid must be strictly increasing");
    }
  }
  if (ue_grid.empty()) throw ConfigError("sweep.num_ues: grid is empty");
  for (std::size_t i = 1; i < ue_grid.size(); ++i) {
    if (!(ue_grid[i] > ue_grid[i - 1])) {
      throw ConfigError("sweep.num_ues: grid must be strictly increasing");
    }
  }
}

std::size_t ExperimentConfig::resolved_streams() const {
  return fronthaul_streams.value_or(std::min<std::size_t>(scenario.antennas_per_ru, 4));
}

SystemModel ExperimentConfig::system_model() const {
  Split72Config fh = fronthaul;
  fh.streams = resolved_streams();
  SystemModel model;
  model.topology = topology;
  model.fronthaul_rate_bps = fronthaul_rate_split72(fh);
  model.power = power;
  model.per_ru_max_w = per_ru_max_w;
  model.clusters = clusters;
  return model;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  ExperimentConfig c;
  Section root(doc, "");

  if (const json* s = root.child("scenario")) {
    Section sec(*s, "scenario");
    sec.read("num_rus", c.scenario.num_rus);
    sec.read("num_ues", c.scenario.num_ues);
    sec.read("area_side_m", c.scenario.area_side_m);
    sec.read("antennas_per_ru", c.scenario.antennas_per_ru);
    sec.read("bandwidth_hz", c.scenario.bandwidth_hz);
    sec.read("noise_dbm", c.scenario.noise_dbm);
    sec.read("shadowing_std_db", c.scenario.shadowing_std_db);
    sec.read("grid_jitter", c.scenario.grid_jitter);
    sec.read("min_distance_m", c.scenario.min_distance_m);
    sec.reject_unknown();
  }
  if (const json* t = root.child("topology")) {
    Section sec(*t, "topology");
    sec.read("num_wavelengths", c.topology.num_wavelengths);
    sec.read("wavelength_capacity_bps", c.topology.wavelength_capacity_bps);
    sec.reject_unknown();
  }
  if (const json* f = root.child("fronthaul")) {
    Section sec(*f, "fronthaul");
    sec.read("subcarriers", c.fronthaul.subcarriers);
    sec.read("symbols_per_second", c.fronthaul.symbols_per_second);
    sec.read("iq_bits", c.fronthaul.iq_bits);
    sec.read("overhead", c.fronthaul.overhead);
    if (const json* v = sec.child("streams")) {
      if (!v->is_number_unsigned()) throw ConfigError("fronthaul.streams: wrong type");
      c.fronthaul_streams = v->get<std::size_t>();
    }
    sec.reject_unknown();
  }
  if (const json* p = root.child("power")) {
    Section sec(*p, "power");
    sec.read("p_ru_fixed", c.power.p_ru_fixed);
    sec.read("p_ru_sleep", c.power.p_ru_sleep);
    sec.read("pa_slope", c.power.pa_slope);
    sec.read("p_onu", c.power.p_onu);
    sec.read("p_olt_fixed", c.power.p_olt_fixed);
    sec.read("p_lc", c.power.p_lc);
    sec.read("p_gpp_idle", c.power.p_gpp_idle);
    sec.read("p_gpp_max", c.power.p_gpp_max);
    sec.read("gpp_capacity", c.power.gpp_capacity);
    sec.read("c_central", c.power.c_central);
    sec.read("c_precode", c.power.c_precode);
    sec.read("c_forward", c.power.c_forward);
    sec.reject_unknown();
  }
  if (const json* r = root.child("radio")) {
    Section sec(*r, "radio");
    sec.read("per_ru_max_w", c.per_ru_max_w);
    std::string mode = to_string(c.clusters);
    sec.read("cluster_mode", mode);
    c.clusters = parse_cluster_spec(mode);
    sec.reject_unknown();
  }
  root.read("target_se", c.target_se);
  if (const json* a = root.child("algos")) {
    if (!a->is_array()) throw ConfigError("algos: expected an array of names");
    c.algos.clear();
    for (const auto& item : *a) {
      if (!item.is_string()) throw ConfigError("algos: expected an array of names");
      c.algos.push_back(parse_algo(item.get<std::string>()));
    }
  }
  if (const json* s = root.child("sweep")) {
    Section sec(*s, "sweep");
    sec.read("se_target", c.se_grid);
    sec.read("num_ues", c.ue_grid);
    sec.reject_unknown();
  }
  root.read("seed", c.seed);
  root.read("output", c.output);
  root.read("strict", c.strict);
  root.reject_unknown();

  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["scenario"] = {{"num_rus", scenario.num_rus},
                     {"num_ues", scenario.num_ues},
                     {"area_side_m", scenario.area_side_m},
                     {"antennas_per_ru", scenario.antennas_per_ru},
                     {"bandwidth_hz", scenario.bandwidth_hz},
                     {"noise_dbm", scenario.noise_dbm},
                     {"shadowing_std_db", scenario.shadowing_std_db},
                     {"grid_jitter", scenario.grid_jitter},
                     {"min_distance_m", scenario.min_distance_m}};
  doc["topology"] = {{"num_wavelengths", topology.num_wavelengths},
                     {"wavelength_capacity_bps", topology.wavelength_capacity_bps}};
  doc["fronthaul"] = {{"subcarriers", fronthaul.subcarriers},
                      {"symbols_per_second", fronthaul.symbols_per_second},
                      {"iq_bits", fronthaul.iq_bits},
                      {"streams", resolved_streams()},
                      {"overhead", fronthaul.overhead}};
  doc["power"] = {{"p_ru_fixed", power.p_ru_fixed},   {"p_ru_sleep", power.p_ru_sleep},
                  {"pa_slope", power.pa_slope},       {"p_onu", power.p_onu},
                  {"p_olt_fixed", power.p_olt_fixed}, {"p_lc", power.p_lc},
                  {"p_gpp_idle", power.p_gpp_idle},   {"p_gpp_max", power.p_gpp_max},
                  {"gpp_capacity", power.gpp_capacity}, {"c_central", power.c_central},
                  {"c_precode", power.c_precode},     {"c_forward", power.c_forward}};
  doc["radio"] = {{"per_ru_max_w", per_ru_max_w}, {"cluster_mode", to_string(clusters)}};
  doc["target_se"] = target_se;
  json names = json::array();
  for (Algo a : algos) names.push_back(to_string(a));
  doc["algos"] = names;
  doc["sweep"] = {{"se_target", se_grid}, {"num_ues", ue_grid}};
  doc["seed"] = seed;
  doc["output"] = output;
  doc["strict"] = strict;
  return doc;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return ExperimentConfig::from_json(doc);
}

OptResult run_algo(Algo algo, const Scenario& scenario, const SystemModel& model,
                   double target_se) {
  switch (algo) {
    case Algo::kBaseline:
      return baseline_all_on(scenario, model, target_se);
    case Algo::kGreedy:
      return optimize_greedy(scenario, model, target_se);
    case Algo::kGreedySleep:
      return consolidate_sleep(optimize_greedy(scenario, model, target_se), scenario, model,
                               target_se);
    case Algo::kExhaustive:
      return optimize_exhaustive(scenario, model, target_se);
    case Algo::kSmallCell: {
      SystemModel small = model;
      small.clusters = {ClusterMode::kSmallCell, 1};
      return consolidate_sleep(optimize_greedy(scenario, small, target_se), scenario, small,
                               target_se);
    }
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace cfpon
