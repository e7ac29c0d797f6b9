// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_SCENARIO_HPP
#define CFPON_SCENARIO_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cfpon/matrix.hpp"

namespace cfpon {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Euclidean distance in meters.
double distance(const Point& p, const Point& q);

/// Log-distance large-scale gain, 10^((-30.5 - 36.7 log10 d) / 10).
/// Throws DomainError for d <= 0 (or non-finite d).
double path_loss_gain(double distance_m);

/// Thermal noise power in watts for a level given in dBm.
double dbm_to_watts(double dbm);

struct ScenarioConfig {
  std::size_t num_rus = 16;
  std::size_t num_ues = 10;
  double area_side_m = 1000.0;
  std::size_t antennas_per_ru = 4;
  double bandwidth_hz = 100e6;
  double noise_dbm = -94.0;
  double shadowing_std_db = 8.0;
  /// RU jitter as a fraction of the grid cell size (0 = exact cell centers,
  /// 1 = anywhere inside the cell).
  double grid_jitter = 0.5;
  double min_distance_m = 1.0;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Immutable network snapshot. beta(l, k) is the linear large-scale gain
/// between RU l and UE k.
struct Scenario {
  double area_side_m = 0.0;
  std::vector<Point> ru_positions;
  std::vector<Point> ue_positions;
  std::size_t antennas_per_ru = 1;
  double bandwidth_hz = 0.0;
  double noise_power_w = 0.0;
  Matrix beta;
  std::uint64_t seed = 0;

  std::size_t num_rus() const { return ru_positions.size(); }
  std::size_t num_ues() const { return ue_positions.size(); }

  bool operator==(const Scenario&) const = default;
};

/// Deterministic scenario generator.
///
/// RUs sit on a jittered grid (ceil(sqrt(L)) columns, filled row-major).
/// UEs are drawn uniformly; for every UE its two coordinates are drawn
/// followed by its L shadowing samples, so the first K UEs of a scenario
/// with K' > K UEs (same seed) are identical. Random numbers come from
/// std::mt19937_64 and a hand-rolled uniform/Box-Muller transform so the
/// output does not depend on the standard library's distribution classes.
Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace cfpon

#endif  // CFPON_SCENARIO_HPP
