// SPDX-License-Identifier: Apache-2.0
#include "cfpon/scenario.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cfpon/errors.hpp"

namespace cfpon {

namespace {

// Uniform in [0, 1) from the top 53 bits of one engine draw.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller, one draw per call (the second variate is discarded so the
// stream position depends only on the number of samples taken).
double next_standard_normal(std::mt19937_64& rng) {
  double u1 = next_uniform(rng);
  const double u2 = next_uniform(rng);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ConfigError(std::string("scenario.") + field + ": " + what);
}

}  // namespace

double distance(const Point& p, const Point& q) { return std::hypot(p.x - q.x, p.y - q.y); }

double path_loss_gain(double distance_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw DomainError("path_loss_gain: distance must be positive and finite, got " +
                      std::to_string(distance_m));
  }
  return std::pow(10.0, (-30.5 - 36.7 * std::log10(distance_m)) / 10.0);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void ScenarioConfig::validate() const {
  require(num_rus >= 1, "num_rus", "must be >= 1");
  require(antennas_per_ru >= 1, "antennas_per_ru", "must be >= 1");
  require(area_side_m > 0.0 && std::isfinite(area_side_m), "area_side_m", "must be > 0");
  require(bandwidth_hz > 0.0 && std::isfinite(bandwidth_hz), "bandwidth_hz", "must be > 0");
  require(std::isfinite(noise_dbm), "noise_dbm", "must be finite");
  require(shadowing_std_db >= 0.0 && std::isfinite(shadowing_std_db), "shadowing_std_db",
          "must be >= 0");
  require(grid_jitter >= 0.0 && grid_jitter <= 1.0, "grid_jitter", "must lie in [0, 1]");
  require(min_distance_m > 0.0 && std::isfinite(min_distance_m), "min_distance_m",
          "must be > 0");
}

Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);

  Scenario s;
  s.area_side_m = config.area_side_m;
  s.antennas_per_ru = config.antennas_per_ru;
  s.bandwidth_hz = config.bandwidth_hz;
  s.noise_power_w = dbm_to_watts(config.noise_dbm);
  s.seed = seed;

  const std::size_t num_rus = config.num_rus;
  const std::size_t num_ues = config.num_ues;
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(num_rus))));
  const std::size_t rows = (num_rus + cols - 1) / cols;
  const double cell_w = config.area_side_m / static_cast<double>(cols);
  const double cell_h = config.area_side_m / static_cast<double>(rows);

  s.ru_positions.reserve(num_rus);
  for (std::size_t l = 0; l < num_rus; ++l) {
    const double cx = (static_cast<double>(l % cols) + 0.5) * cell_w;
    const double cy = (static_cast<double>(l / cols) + 0.5) * cell_h;
    const double jx = (next_uniform(rng) - 0.5) * config.grid_jitter * cell_w;
    const double jy = (next_uniform(rng) - 0.5) * config.grid_jitter * cell_h;
    s.ru_positions.push_back({cx + jx, cy + jy});
  }

  s.beta = Matrix(num_rus, num_ues);
  s.ue_positions.reserve(num_ues);
  for (std::size_t k = 0; k < num_ues; ++k) {
    const Point ue{next_uniform(rng) * config.area_side_m, next_uniform(rng) * config.area_side_m};
    s.ue_positions.push_back(ue);
    for (std::size_t l = 0; l < num_rus; ++l) {
      const double d = std::max(distance(s.ru_positions[l], ue), config.min_distance_m);
      const double shadow_db = config.shadowing_std_db * next_standard_normal(rng);
      s.beta(l, k) = path_loss_gain(d) * std::pow(10.0, shadow_db / 10.0);
    }
  }
  return s;
}

}  // namespace cfpon
