// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_SWEEP_HPP
#define CFPON_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cfpon/config.hpp"

namespace cfpon {

enum class SweepVariable { kSeTarget, kNumUes };

std::string to_string(SweepVariable var);

struct SweepRow {
  SweepVariable variable = SweepVariable::kSeTarget;
  double value = 0.0;
  Algo algo = Algo::kBaseline;
  OptResult result;
  std::size_t active_gpps = 0;
  std::size_t active_lambdas = 0;
  std::uint64_t seed = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

inline constexpr const char* kCsvHeader =
    "sweep_var,sweep_value,algo,feasible,total_w,radio_w,pon_w,cloud_w,active_rus,active_gpps,"
    "active_lambdas,min_se,iterations,seed";

/// One row per (grid point, algo), grid-major. All points share the config
/// seed; for the UE sweep the scenario is regenerated per K, and because
/// UEs are drawn as a prefix the smaller populations are subsets of the
/// larger ones.
SweepTable run_sweep(const ExperimentConfig& config, SweepVariable variable);

/// Six significant digits, as used in every CSV float column.
std::string format_float(double value);

std::string format_csv(const SweepTable& table);
/// Throws IoError when the file cannot be written.
void emit_csv(const SweepTable& table, const std::string& path);

}  // namespace cfpon

#endif  // CFPON_SWEEP_HPP
