// SPDX-License-Identifier: Apache-2.0
#include "cfpon/fronthaul.hpp"

#include <cmath>
#include <string>

#include "cfpon/deployment.hpp"
#include "cfpon/errors.hpp"

namespace cfpon {

void PonTopology::validate() const {
  if (num_wavelengths < 1) throw ConfigError("topology.num_wavelengths: must be >= 1");
  if (!(wavelength_capacity_bps > 0.0) || !std::isfinite(wavelength_capacity_bps)) {
    throw ConfigError("topology.wavelength_capacity_bps: must be > 0");
  }
}

void Split72Config::validate() const {
  if (subcarriers < 1) throw ConfigError("fronthaul.subcarriers: must be >= 1");
  if (!(symbols_per_second > 0.0)) throw ConfigError("fronthaul.symbols_per_second: must be > 0");
  if (iq_bits < 1) throw ConfigError("fronthaul.iq_bits: must be >= 1");
  if (streams < 1) throw ConfigError("fronthaul.streams: must be >= 1");
  if (!(overhead >= 1.0)) throw ConfigError("fronthaul.overhead: must be >= 1");
}

double fronthaul_rate_split72(const Split72Config& cfg) {
  cfg.validate();
  return static_cast<double>(cfg.subcarriers) * cfg.symbols_per_second * 2.0 *
         static_cast<double>(cfg.iq_bits) * static_cast<double>(cfg.streams) * cfg.overhead;
}

double fronthaul_rate_split8(double sample_rate_hz, std::size_t iq_bits, std::size_t antennas) {
  return sample_rate_hz * 2.0 * static_cast<double>(iq_bits) * static_cast<double>(antennas);
}

std::vector<double> wavelength_loads(const Deployment& deployment, const PonTopology& topology,
                                     double rate_per_ru_bps) {
  std::vector<double> load(topology.num_wavelengths, 0.0);
  for (std::size_t l = 0; l < deployment.num_rus(); ++l) {
    if (!deployment.is_active(l)) continue;
    const auto& w = deployment.ru_wavelength[l];
    if (!w) throw StructuralError("fronthaul: active RU " + std::to_string(l) + " has no wavelength");
    if (*w >= topology.num_wavelengths) {
      throw StructuralError("fronthaul: RU " + std::to_string(l) + " on unknown wavelength");
    }
    load[*w] += rate_per_ru_bps;
  }
  return load;
}

std::vector<CapacityViolation> check_wavelength_capacity(const Deployment& deployment,
                                                         const PonTopology& topology,
                                                         double rate_per_ru_bps) {
  const auto load = wavelength_loads(deployment, topology, rate_per_ru_bps);
  std::vector<CapacityViolation> out;
  for (std::size_t w = 0; w < load.size(); ++w) {
    if (load[w] > topology.wavelength_capacity_bps) {
      out.push_back({w, load[w], topology.wavelength_capacity_bps});
    }
  }
  return out;
}

std::vector<std::optional<std::size_t>> ru_to_gpp(const Deployment& deployment,
                                                  const PonTopology& topology) {
  std::vector<std::optional<std::size_t>> out(deployment.num_rus());
  for (std::size_t l = 0; l < deployment.num_rus(); ++l) {
    const auto& w = deployment.ru_wavelength[l];
    if (w && *w < topology.num_wavelengths) out[l] = *w;
  }
  return out;
}

}  // namespace cfpon
