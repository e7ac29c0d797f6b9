// SPDX-License-Identifier: Apache-2.0
#include "cfpon/power.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfpon/errors.hpp"

namespace cfpon {

void PowerParams::validate() const {
  const auto non_negative = [](double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string("power.") + field + ": must be finite and >= 0");
    }
  };
  non_negative(p_ru_fixed, "p_ru_fixed");
  non_negative(p_ru_sleep, "p_ru_sleep");
  non_negative(pa_slope, "pa_slope");
  non_negative(p_onu, "p_onu");
  non_negative(p_olt_fixed, "p_olt_fixed");
  non_negative(p_lc, "p_lc");
  non_negative(p_gpp_idle, "p_gpp_idle");
  non_negative(p_gpp_max, "p_gpp_max");
  non_negative(c_central, "c_central");
  non_negative(c_precode, "c_precode");
  non_negative(c_forward, "c_forward");
  if (p_gpp_max < p_gpp_idle) throw ConfigError("power.p_gpp_max: must be >= p_gpp_idle");
  if (!(gpp_capacity > 0.0) || !std::isfinite(gpp_capacity)) {
    throw ConfigError("power.gpp_capacity: must be > 0");
  }
}

double ru_power(RuState state, double tx_sum_w, const PowerParams& params) {
  if (!(tx_sum_w >= 0.0)) throw DomainError("ru_power: negative transmit power");
  switch (state) {
    case RuState::kActive:
      return params.p_ru_fixed + params.pa_slope * tx_sum_w;
    case RuState::kSleep:
    case RuState::kOff:
      if (tx_sum_w > 0.0) {
        throw DomainError("ru_power: RU in " + to_string(state) + " state cannot transmit");
      }
      return state == RuState::kSleep ? params.p_ru_sleep : 0.0;
  }
  return 0.0;
}

double gpp_power(bool active, double load, const PowerParams& params) {
  if (!(load >= 0.0)) throw DomainError("gpp_power: negative load");
  if (!active) {
    if (load > 0.0) throw DomainError("gpp_power: load on a powered-down GPP");
    return 0.0;
  }
  return params.p_gpp_idle + (params.p_gpp_max - params.p_gpp_idle) * load;
}

GppLoad gpp_load(const Deployment& deployment, const PonTopology& topology,
                 const PowerParams& params) {
  const std::size_t num_gpps = topology.num_wavelengths;
  const auto gpp_of = ru_to_gpp(deployment, topology);
  GppLoad out;
  out.gops.assign(num_gpps, 0.0);
  for (std::size_t k = 0; k < deployment.num_ues(); ++k) {
    const auto& set = deployment.clusters.serving[k];
    if (set.empty()) continue;
    const std::size_t anchor = deployment.ue_anchor[k];
    out.gops[anchor] += params.c_central;
    for (std::size_t l : set) {
      if (!gpp_of[l]) {
        throw StructuralError("gpp_load: serving RU " + std::to_string(l) + " has no GPP");
      }
      const std::size_t g = *gpp_of[l];
      out.gops[g] += params.c_precode;
      if (g != anchor) {
        out.gops[g] += params.c_forward;
        out.gops[anchor] += params.c_forward;
      }
    }
  }
  out.load.resize(num_gpps);
  for (std::size_t g = 0; g < num_gpps; ++g) {
    out.load[g] = out.gops[g] / params.gpp_capacity;
    if (out.load[g] > 1.0) out.overloaded.push_back(g);
  }
  return out;
}

PowerBreakdown total_power(const Deployment& deployment, const PonTopology& topology,
                           const PowerParams& params) {
  const bool allocated = deployment.alloc.p.rows() == deployment.num_rus();
  PowerBreakdown out;
  double ru_sum = 0.0;
  std::size_t onus = 0;
  for (std::size_t l = 0; l < deployment.num_rus(); ++l) {
    const double tx = allocated ? deployment.alloc.ru_tx_sum(l) : 0.0;
    ru_sum += ru_power(deployment.ru_state[l], tx, params);
    if (deployment.is_active(l)) ++onus;
  }
  out.radio_w = ru_sum + params.p_onu * static_cast<double>(onus);

  const auto powered = deployment.gpp_powered(topology.num_wavelengths);
  const auto load = gpp_load(deployment, topology, params);
  std::size_t line_cards = 0;
  std::vector<double> per_gpp(topology.num_wavelengths);
  for (std::size_t g = 0; g < topology.num_wavelengths; ++g) {
    if (powered[g]) ++line_cards;
    per_gpp[g] = gpp_power(powered[g], load.load[g], params);
  }
  // Summed in sorted order so relabeling wavelengths cannot change the bits.
  std::sort(per_gpp.begin(), per_gpp.end());
  double cloud = 0.0;
  for (double w : per_gpp) cloud += w;
  out.pon_w = params.p_olt_fixed + params.p_lc * static_cast<double>(line_cards);
  out.cloud_w = cloud;
  out.total_w = out.radio_w + out.pon_w + out.cloud_w;
  return out;
}

}  // namespace cfpon
