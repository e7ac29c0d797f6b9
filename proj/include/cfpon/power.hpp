// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_POWER_HPP
#define CFPON_POWER_HPP

#include <cstddef>
#include <vector>

#include "cfpon/deployment.hpp"
#include "cfpon/fronthaul.hpp"

namespace cfpon {

/// Power-model coefficients. Watts unless noted; processing in GOPS.
struct PowerParams {
  double p_ru_fixed = 50.0;
  double p_ru_sleep = 5.0;
  double pa_slope = 4.0;  // 1 / PA efficiency
  double p_onu = 8.0;
  double p_olt_fixed = 20.0;
  double p_lc = 15.0;
  double p_gpp_idle = 100.0;
  double p_gpp_max = 300.0;
  double gpp_capacity = 1000.0;
  double c_central = 40.0;  // per anchored UE
  double c_precode = 10.0;  // per serving (RU, UE) pair
  double c_forward = 5.0;   // per cross-GPP serving pair, charged at both ends

  void validate() const;
};

struct PowerBreakdown {
  double radio_w = 0.0;  // RUs + ONUs
  double pon_w = 0.0;    // OLT + line cards
  double cloud_w = 0.0;  // GPPs
  double total_w = 0.0;

  bool operator==(const PowerBreakdown&) const = default;
};

/// Active: p_ru_fixed + pa_slope * tx_sum. Sleep: p_ru_sleep. Off: 0.
/// Throws DomainError for negative tx or for transmit power on a non-active RU.
double ru_power(RuState state, double tx_sum_w, const PowerParams& params);

/// Inactive GPPs draw nothing; active ones are affine in load between idle
/// and max. Loads above 1 extrapolate along the same line (overloads are
/// reported elsewhere). Throws DomainError on negative load or load on an
/// inactive GPP.
double gpp_power(bool active, double load, const PowerParams& params);

struct GppLoad {
  std::vector<double> gops;
  std::vector<double> load;  // gops / gpp_capacity, unclipped
  std::vector<std::size_t> overloaded;
};

/// Processing demand per GPP: central processing for every served UE on its
/// anchor, precoding for every serving pair on the RU's GPP, and forwarding
/// at both ends of every pair whose RU GPP differs from the UE anchor.
GppLoad gpp_load(const Deployment& deployment, const PonTopology& topology,
                 const PowerParams& params);

/// Additive breakdown; total_w = radio_w + pon_w + cloud_w, summed in that
/// order.
PowerBreakdown total_power(const Deployment& deployment, const PonTopology& topology,
                           const PowerParams& params);

}  // namespace cfpon

#endif  // CFPON_POWER_HPP
