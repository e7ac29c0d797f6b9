// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_CFMIMO_HPP
#define CFPON_CFMIMO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "cfpon/matrix.hpp"
#include "cfpon/scenario.hpp"

namespace cfpon {

enum class ClusterMode {
  kCfAll,     // every active RU serves every UE
  kCfTopM,    // the M strongest active RUs per UE
  kSmallCell  // the single strongest active RU per UE
};

struct ClusterSpec {
  ClusterMode mode = ClusterMode::kCfAll;
  std::size_t top_m = 4;  // only read for kCfTopM

  bool operator==(const ClusterSpec& o) const {
    return mode == o.mode && (mode != ClusterMode::kCfTopM || top_m == o.top_m);
  }
};

std::string to_string(const ClusterSpec& spec);
/// Parses "cf_all", "small_cell" or "cf_top_m(M)". Throws ConfigError.
ClusterSpec parse_cluster_spec(const std::string& text);

/// Serving sets S_k, each sorted by RU index.
struct ClusterAssignment {
  std::vector<std::vector<std::size_t>> serving;
  ClusterSpec spec;

  std::size_t num_ues() const { return serving.size(); }
  bool operator==(const ClusterAssignment&) const = default;
};

/// Per-(RU, UE) downlink powers in watts.
struct PowerAllocation {
  Matrix p;
  double per_ru_max_w = 1.0;

  /// Sum over UEs of the power transmitted by RU l.
  double ru_tx_sum(std::size_t l) const;
  bool operator==(const PowerAllocation&) const = default;
};

struct SEResult {
  std::vector<double> sinr;
  std::vector<double> se;

  /// Minimum SE over UEs; 0 when there are no UEs.
  double min_se() const;
};

/// Builds serving sets over the RUs flagged in `active` (one flag per RU).
/// Ties in beta resolve to the lower RU index. With no active RU every S_k is
/// empty. Throws ConfigError for cf_top_m with M < 1.
ClusterAssignment form_clusters(const Scenario& scenario, const ClusterSpec& spec,
                                const std::vector<bool>& active);

/// Downlink coherent-combining SINR of UE k:
///   N (sum_{l in S_k} sqrt(p_lk beta_lk))^2 / (sum_l beta_lk sum_k' p_lk' + noise)
double sinr(std::size_t k, const PowerAllocation& alloc, const ClusterAssignment& clusters,
            const Scenario& scenario);

SEResult se_per_ue(const PowerAllocation& alloc, const ClusterAssignment& clusters,
                   const Scenario& scenario);

/// Allocation with the fixed proportional-to-beta shape scaled by `scale`:
///   p_lk = scale * per_ru_max * beta_lk / sum_{k' served by l} beta_lk'.
PowerAllocation scaled_allocation(double scale, double per_ru_max_w,
                                  const ClusterAssignment& clusters, const Scenario& scenario);

struct PowerControlResult {
  bool feasible = false;
  /// Smallest scale found by bisection; 1 when infeasible.
  double scale = 0.0;
  /// Allocation at `scale`. For infeasible targets this is full power.
  PowerAllocation alloc;
  /// min_k SE_k with every RU at full power. Reported for infeasible targets.
  double min_se_at_full_power = 0.0;
};

inline constexpr double kPowerControlTolerance = 1e-6;

/// Bisection on the global power scale so that every UE meets `target_se`.
/// Clusters may only reference RUs flagged in `active`; StructuralError
/// otherwise. Throws DomainError for negative or non-finite targets.
PowerControlResult power_control(double target_se, const ClusterAssignment& clusters,
                                 const Scenario& scenario, const std::vector<bool>& active,
                                 double per_ru_max_w);

}  // namespace cfpon

#endif  // CFPON_CFMIMO_HPP
