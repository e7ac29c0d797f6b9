// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_CONFIG_HPP
#define CFPON_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfpon/orchestrator.hpp"

namespace cfpon {

enum class Algo { kBaseline, kGreedy, kGreedySleep, kExhaustive, kSmallCell };

std::string to_string(Algo algo);
/// Throws ConfigError for unknown names.
Algo parse_algo(const std::string& name);
/// Comma-separated list; throws ConfigError when empty.
std::vector<Algo> parse_algo_list(const std::string& csv);

/// One experiment: network, solver selection and sweep grids. Every field has
/// a default; from_json() fills in whatever the document omits.
struct ExperimentConfig {
  ScenarioConfig scenario;
  PonTopology topology;
  Split72Config fronthaul;
  /// nullopt: streams = min(antennas_per_ru, 4).
  std::optional<std::size_t> fronthaul_streams;
  PowerParams power;
  double per_ru_max_w = 1.0;
  ClusterSpec clusters;
  double target_se = 1.5;
  std::vector<Algo> algos{Algo::kBaseline, Algo::kGreedySleep};
  std::vector<double> se_grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  std::vector<std::size_t> ue_grid{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  std::uint64_t seed = 7;
  std::string output;
  bool strict = false;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  std::size_t resolved_streams() const;
  SystemModel system_model() const;

  /// Unknown keys are rejected so typos surface as errors.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  /// Full document with every default spelled out.
  nlohmann::json to_json() const;
};

/// Reads and parses a config file. IoError if unreadable, ConfigError if
/// malformed.
ExperimentConfig load_config(const std::string& path);

/// Runs one algorithm on one scenario.
OptResult run_algo(Algo algo, const Scenario& scenario, const SystemModel& model,
                   double target_se);

}  // namespace cfpon

#endif  // CFPON_CONFIG_HPP
