// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_ORCHESTRATOR_HPP
#define CFPON_ORCHESTRATOR_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "cfpon/cfmimo.hpp"
#include "cfpon/deployment.hpp"
#include "cfpon/fronthaul.hpp"
#include "cfpon/power.hpp"
#include "cfpon/scenario.hpp"

namespace cfpon {

/// Everything about the network that is not geometry: transport, cloud,
/// power coefficients and the radio knobs shared by every solver.
struct SystemModel {
  PonTopology topology;
  double fronthaul_rate_bps = 0.0;  // per active RU
  PowerParams power;
  double per_ru_max_w = 1.0;
  ClusterSpec clusters;

  void validate() const;
};

struct SearchStats {
  std::size_t iterations = 0;      // scan passes
  std::size_t moves_accepted = 0;
  std::size_t evaluations = 0;
  bool hit_iteration_limit = false;

  bool operator==(const SearchStats&) const = default;
};

struct OptResult {
  Deployment deployment;
  PowerBreakdown breakdown;
  /// All SE targets met and no wavelength or GPP capacity violation.
  bool feasible = false;
  bool se_met = false;
  std::vector<double> se;
  double min_se = 0.0;
  double power_scale = 0.0;
  std::vector<CapacityViolation> fronthaul_violations;
  std::vector<double> gpp_loads;
  std::vector<std::size_t> overloaded_gpps;
  SearchStats stats;

  std::size_t active_rus() const { return deployment.num_active_rus(); }
  std::size_t active_gpps(std::size_t num_wavelengths) const;
};

/// Runs power control on the deployment's clusters, then the capacity checks
/// and the power model. The incoming allocation is ignored and replaced.
/// Throws StructuralError for invalid deployments (never repairs them).
OptResult evaluate(const Deployment& deployment, const Scenario& scenario,
                   const SystemModel& model, double target_se);

/// Deployment with every RU off, no wavelengths and every UE anchored on 0.
Deployment empty_deployment(const Scenario& scenario);

/// Every RU active, RU l on wavelength l mod W, clusters per the model and
/// each UE anchored on the GPP of its strongest serving RU.
OptResult baseline_all_on(const Scenario& scenario, const SystemModel& model, double target_se);

struct ExhaustiveLimits {
  std::size_t max_rus = 6;
  std::size_t max_wavelengths = 3;
  std::size_t max_ues = 4;
};

/// Ground-truth solver: every RU subset, and for each subset every joint
/// labelling of (active RUs -> wavelength, UEs -> anchor) up to wavelength
/// relabeling. Returns the cheapest feasible deployment (first found on
/// ties), or the all-on evaluation flagged infeasible when nothing is
/// feasible. Throws LimitError above `limits`.
OptResult optimize_exhaustive(const Scenario& scenario, const SystemModel& model,
                              double target_se, const ExhaustiveLimits& limits = {});

/// RUs ordered by total gain sum_k beta(l, k), descending; ties by index.
std::vector<std::size_t> rank_rus(const Scenario& scenario);

/// Length of the shortest prefix of rank_rus() whose power control is
/// feasible (binary search); L when even the full set fails, 0 when K = 0.
std::size_t feasible_prefix_length(const Scenario& scenario, const SystemModel& model,
                                   double target_se);

/// First-fit-decreasing of the active RUs' fronthaul onto wavelengths. RUs
/// that fit nowhere go to the least-loaded wavelength.
std::vector<std::optional<std::size_t>> pack_wavelengths(const std::vector<bool>& active,
                                                         const SystemModel& model);

/// Anchors each UE on the GPP hosting most of its serving RUs (ties: lower
/// index); unserved UEs anchor on 0.
std::vector<std::size_t> anchor_by_majority(const ClusterAssignment& clusters,
                                            const std::vector<std::optional<std::size_t>>& ru_wavelength);

/// First-improvement local search over deactivate / activate / move /
/// re-anchor / swap moves, scanning in index order and restarting after
/// every accepted move.
OptResult local_search(OptResult start, const Scenario& scenario, const SystemModel& model,
                       double target_se);

/// Staged heuristic: prefix activation, FFD packing, majority anchoring,
/// then local_search. Returns the best deployment found, flagged if
/// infeasible.
OptResult optimize_greedy(const Scenario& scenario, const SystemModel& model, double target_se);

/// Sleep-mode pass: repeatedly hands over the UEs of the active RU carrying
/// the least transmit power and puts it to sleep, keeping the change only if
/// the result stays feasible and total power drops. Infeasible inputs are
/// returned unchanged.
OptResult consolidate_sleep(const OptResult& result, const Scenario& scenario,
                            const SystemModel& model, double target_se);

}  // namespace cfpon

#endif  // CFPON_ORCHESTRATOR_HPP
