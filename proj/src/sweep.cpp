// SPDX-License-Identifier: Apache-2.0
#include "cfpon/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cfpon/errors.hpp"

namespace cfpon {

std::string to_string(SweepVariable var) {
  return var == SweepVariable::kSeTarget ? "se_target" : "num_ues";
}

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

SweepTable run_sweep(const ExperimentConfig& config, SweepVariable variable) {
  config.validate();
  const SystemModel model = config.system_model();
  const ExhaustiveLimits limits;
  for (Algo a : config.algos) {
    if (a != Algo::kExhaustive) continue;
    const std::size_t max_k = variable == SweepVariable::kNumUes ? config.ue_grid.back()
                                                                 : config.scenario.num_ues;
    if (config.scenario.num_rus > limits.max_rus ||
        config.topology.num_wavelengths > limits.max_wavelengths || max_k > limits.max_ues) {
      throw ConfigError("algos: exhaustive requires num_rus <= " + std::to_string(limits.max_rus) +
                        ", num_wavelengths <= " + std::to_string(limits.max_wavelengths) +
                        ", num_ues <= " + std::to_string(limits.max_ues));
    }
  }

  SweepTable table;
  const auto add_rows = [&](const Scenario& scenario, double value, double target) {
    for (Algo a : config.algos) {
      SweepRow row;
      row.variable = variable;
      row.value = value;
      row.algo = a;
      row.result = run_algo(a, scenario, model, target);
      row.active_gpps = row.result.active_gpps(model.topology.num_wavelengths);
      const auto loads = wavelength_loads(row.result.deployment, model.topology, model.fronthaul_rate_bps);
      for (double load : loads) row.active_lambdas += load > 0.0 ? 1 : 0;
      row.seed = config.seed;
      table.rows.push_back(std::move(row));
    }
  };

  if (variable == SweepVariable::kSeTarget) {
    const Scenario scenario = generate_scenario(config.scenario, config.seed);
    for (double se : config.se_grid) add_rows(scenario, se, se);
  } else {
    for (std::size_t k : config.ue_grid) {
      ScenarioConfig sc = config.scenario;
      sc.num_ues = k;
      add_rows(generate_scenario(sc, config.seed), static_cast<double>(k), config.target_se);
    }
  }
  return table;
}

std::string format_csv(const SweepTable& table) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& row : table.rows) {
    const auto& r = row.result;
    out << to_string(row.variable) << ',' << format_float(row.value) << ',' << to_string(row.algo)
        << ',' << (r.feasible ? "true" : "false") << ',' << format_float(r.breakdown.total_w) << ','
        << format_float(r.breakdown.radio_w) << ',' << format_float(r.breakdown.pon_w) << ','
        << format_float(r.breakdown.cloud_w) << ',' << r.active_rus() << ',' << row.active_gpps
        << ',' << row.active_lambdas << ',' << format_float(r.min_se) << ',' << r.stats.iterations
        << ',' << row.seed << '\n';
  }
  return out.str();
}

void emit_csv(const SweepTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << format_csv(table);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace cfpon
