// SPDX-License-Identifier: Apache-2.0
#include "cfpon/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "cfpon/errors.hpp"

namespace cfpon {

namespace {

// Absolute slack for "strictly lower total power", so floating noise cannot
// cycle the local search.
constexpr double kImprovementEps = 1e-9;

// Total constraint violation: SE shortfall plus relative fronthaul and GPP
// excess. Zero iff feasible.
double infeasibility(const OptResult& r, double target_se, double capacity_bps) {
  double score = 0.0;
  for (double se : r.se) score += std::max(0.0, target_se - se);
  for (const auto& v : r.fronthaul_violations) score += (v.load_bps - v.capacity_bps) / capacity_bps;
  for (double load : r.gpp_loads) score += std::max(0.0, load - 1.0);
  return score;
}

bool improves(const OptResult& candidate, const OptResult& current, double target_se,
              double capacity_bps) {
  if (current.feasible) {
    return candidate.feasible &&
           candidate.breakdown.total_w < current.breakdown.total_w - kImprovementEps;
  }
  if (candidate.feasible) return true;
  return infeasibility(candidate, target_se, capacity_bps) <
         infeasibility(current, target_se, capacity_bps) - 1e-12;
}

Deployment with_clusters(Deployment d, const Scenario& scenario, const SystemModel& model) {
  d.clusters = form_clusters(scenario, model.clusters, d.active_mask());
  d.alloc = {};
  return d;
}

// Wavelength for a newly activated RU: first open wavelength with spare
// capacity, else the lowest unopened one, else the least loaded.
std::size_t wavelength_for_new_ru(const Deployment& d, const SystemModel& model) {
  const std::size_t num_w = model.topology.num_wavelengths;
  const auto load = wavelength_loads(d, model.topology, model.fronthaul_rate_bps);
  const auto open = d.gpp_powered(num_w);
  for (std::size_t w = 0; w < num_w; ++w) {
    if (open[w] && load[w] + model.fronthaul_rate_bps <= model.topology.wavelength_capacity_bps) {
      return w;
    }
  }
  for (std::size_t w = 0; w < num_w; ++w) {
    if (!open[w]) return w;
  }
  return static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
}

// Open wavelengths plus the lowest unopened one (wavelengths are
// interchangeable, so one representative unopened target suffices).
std::vector<std::size_t> candidate_wavelengths(const Deployment& d, std::size_t num_w) {
  const auto open = d.gpp_powered(num_w);
  std::vector<std::size_t> out;
  bool fresh_added = false;
  for (std::size_t w = 0; w < num_w; ++w) {
    if (open[w]) {
      out.push_back(w);
    } else if (!fresh_added) {
      out.push_back(w);
      fresh_added = true;
    }
  }
  return out;
}

}  // namespace

void SystemModel::validate() const {
  topology.validate();
  power.validate();
  if (!(fronthaul_rate_bps >= 0.0) || !std::isfinite(fronthaul_rate_bps)) {
    throw ConfigError("fronthaul rate must be finite and >= 0");
  }
  if (!(per_ru_max_w > 0.0) || !std::isfinite(per_ru_max_w)) {
    throw ConfigError("radio.per_ru_max_w: must be > 0");
  }
  if (clusters.mode == ClusterMode::kCfTopM && clusters.top_m < 1) {
    throw ConfigError("radio.cluster_mode: cf_top_m requires M >= 1");
  }
}

std::size_t OptResult::active_gpps(std::size_t num_wavelengths) const {
  const auto on = deployment.gpp_powered(num_wavelengths);
  return static_cast<std::size_t>(std::count(on.begin(), on.end(), true));
}

OptResult evaluate(const Deployment& deployment, const Scenario& scenario,
                   const SystemModel& model, double target_se) {
  Deployment d = deployment;
  d.alloc = {};
  validate_deployment(d, scenario.num_rus(), scenario.num_ues(), model.topology.num_wavelengths);

  const auto pc = power_control(target_se, d.clusters, scenario, d.active_mask(), model.per_ru_max_w);
  d.alloc = pc.alloc;

  OptResult out;
  const auto se = se_per_ue(d.alloc, d.clusters, scenario);
  out.se = se.se;
  out.min_se = se.min_se();
  out.power_scale = pc.scale;
  out.se_met = pc.feasible;
  out.fronthaul_violations = check_wavelength_capacity(d, model.topology, model.fronthaul_rate_bps);
  const auto load = gpp_load(d, model.topology, model.power);
  out.gpp_loads = load.load;
  out.overloaded_gpps = load.overloaded;
  out.breakdown = total_power(d, model.topology, model.power);
  out.feasible = out.se_met && out.fronthaul_violations.empty() && out.overloaded_gpps.empty();
  out.deployment = std::move(d);
  out.stats.evaluations = 1;
  return out;
}

Deployment empty_deployment(const Scenario& scenario) {
  Deployment d;
  d.ru_state.assign(scenario.num_rus(), RuState::kOff);
  d.ru_wavelength.assign(scenario.num_rus(), std::nullopt);
  d.ue_anchor.assign(scenario.num_ues(), 0);
  d.clusters.serving.assign(scenario.num_ues(), {});
  return d;
}

OptResult baseline_all_on(const Scenario& scenario, const SystemModel& model, double target_se) {
  model.validate();
  Deployment d = empty_deployment(scenario);
  for (std::size_t l = 0; l < scenario.num_rus(); ++l) {
    d.ru_state[l] = RuState::kActive;
    d.ru_wavelength[l] = l % model.topology.num_wavelengths;
  }
  d = with_clusters(std::move(d), scenario, model);
  for (std::size_t k = 0; k < scenario.num_ues(); ++k) {
    const auto& set = d.clusters.serving[k];
    if (set.empty()) continue;
    std::size_t best = set.front();
    for (std::size_t l : set) {
      if (scenario.beta(l, k) > scenario.beta(best, k)) best = l;
    }
    d.ue_anchor[k] = *d.ru_wavelength[best];
  }
  return evaluate(d, scenario, model, target_se);
}

OptResult optimize_exhaustive(const Scenario& scenario, const SystemModel& model,
                              double target_se, const ExhaustiveLimits& limits) {
  model.validate();
  const std::size_t num_rus = scenario.num_rus();
  const std::size_t num_ues = scenario.num_ues();
  const std::size_t num_w = model.topology.num_wavelengths;
  if (num_rus > limits.max_rus || num_w > limits.max_wavelengths || num_ues > limits.max_ues) {
    throw LimitError("exhaustive search limited to L <= " + std::to_string(limits.max_rus) +
                     ", W <= " + std::to_string(limits.max_wavelengths) + ", K <= " +
                     std::to_string(limits.max_ues) + " (got L = " + std::to_string(num_rus) +
                     ", W = " + std::to_string(num_w) + ", K = " + std::to_string(num_ues) + ")");
  }

  std::optional<OptResult> best;
  std::size_t evaluations = 0;

  for (std::size_t mask = 0; mask < (std::size_t{1} << num_rus); ++mask) {
    Deployment base = empty_deployment(scenario);
    std::vector<std::size_t> active_rus;
    for (std::size_t l = 0; l < num_rus; ++l) {
      if (mask & (std::size_t{1} << l)) {
        base.ru_state[l] = RuState::kActive;
        active_rus.push_back(l);
      }
    }
    base = with_clusters(std::move(base), scenario, model);

    // Restricted-growth labelling of the item sequence (active RUs, then
    // UEs): item i takes a label <= 1 + max label used so far.
    const std::size_t items = active_rus.size() + num_ues;
    std::vector<std::size_t> label(items, 0);
    std::function<void(std::size_t, std::size_t)> assign = [&](std::size_t i, std::size_t used) {
      if (i == items) {
        Deployment d = base;
        for (std::size_t j = 0; j < active_rus.size(); ++j) d.ru_wavelength[active_rus[j]] = label[j];
        for (std::size_t k = 0; k < num_ues; ++k) d.ue_anchor[k] = label[active_rus.size() + k];
        OptResult r = evaluate(d, scenario, model, target_se);
        ++evaluations;
        if (r.feasible && (!best || r.breakdown.total_w < best->breakdown.total_w)) {
          best = std::move(r);
        }
        return;
      }
      const std::size_t max_label = std::min(used + 1, num_w);
      for (std::size_t c = 0; c < max_label; ++c) {
        label[i] = c;
        assign(i + 1, std::max(used, c + 1));
      }
    };
    assign(0, 0);
  }

  OptResult out = best ? std::move(*best) : baseline_all_on(scenario, model, target_se);
  out.stats = {};
  out.stats.iterations = 1;
  out.stats.evaluations = evaluations;
  return out;
}

std::vector<std::size_t> rank_rus(const Scenario& scenario) {
  std::vector<double> strength(scenario.num_rus(), 0.0);
  for (std::size_t l = 0; l < scenario.num_rus(); ++l) {
    for (double b : scenario.beta.row(l)) strength[l] += b;
  }
  std::vector<std::size_t> order(scenario.num_rus());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return strength[a] > strength[b]; });
  return order;
}

std::size_t feasible_prefix_length(const Scenario& scenario, const SystemModel& model,
                                   double target_se) {
  const std::size_t num_rus = scenario.num_rus();
  if (scenario.num_ues() == 0) return 0;
  const auto order = rank_rus(scenario);
  const auto feasible = [&](std::size_t n) {
    std::vector<bool> active(num_rus, false);
    for (std::size_t i = 0; i < n; ++i) active[order[i]] = true;
    const auto clusters = form_clusters(scenario, model.clusters, active);
    return power_control(target_se, clusters, scenario, active, model.per_ru_max_w).feasible;
  };
  if (!feasible(num_rus)) return num_rus;
  std::size_t lo = 1;  // smallest candidate
  std::size_t hi = num_rus;  // known feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

std::vector<std::optional<std::size_t>> pack_wavelengths(const std::vector<bool>& active,
                                                         const SystemModel& model) {
  const std::size_t num_w = model.topology.num_wavelengths;
  const double cap = model.topology.wavelength_capacity_bps;
  const double rate = model.fronthaul_rate_bps;
  // Demands are homogeneous, so "decreasing" order degenerates to index order.
  std::vector<std::optional<std::size_t>> out(active.size());
  std::vector<double> load;
  for (std::size_t l = 0; l < active.size(); ++l) {
    if (!active[l]) continue;
    std::optional<std::size_t> slot;
    for (std::size_t w = 0; w < load.size(); ++w) {
      if (load[w] + rate <= cap) {
        slot = w;
        break;
      }
    }
    if (!slot && load.size() < num_w) {
      load.push_back(0.0);
      slot = load.size() - 1;
    }
    if (!slot) slot = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) - load.begin());
    load[*slot] += rate;
    out[l] = slot;
  }
  return out;
}

std::vector<std::size_t> anchor_by_majority(
    const ClusterAssignment& clusters, const std::vector<std::optional<std::size_t>>& ru_wavelength) {
  std::vector<std::size_t> anchors(clusters.num_ues(), 0);
  for (std::size_t k = 0; k < clusters.num_ues(); ++k) {
    std::vector<std::size_t> count;
    for (std::size_t l : clusters.serving[k]) {
      const std::size_t w = ru_wavelength[l].value();
      if (count.size() <= w) count.resize(w + 1, 0);
      ++count[w];
    }
    if (!count.empty()) {
      anchors[k] = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
    }
  }
  return anchors;
}

OptResult local_search(OptResult start, const Scenario& scenario, const SystemModel& model,
                       double target_se) {
  const std::size_t num_rus = scenario.num_rus();
  const std::size_t num_ues = scenario.num_ues();
  const std::size_t num_w = model.topology.num_wavelengths;
  const double cap = model.topology.wavelength_capacity_bps;
  const std::size_t limit = std::max<std::size_t>(1, 10 * num_rus * num_w * num_ues);

  OptResult current = std::move(start);
  SearchStats stats = current.stats;

  const auto try_move = [&](const Deployment& candidate) {
    OptResult r = evaluate(candidate, scenario, model, target_se);
    ++stats.evaluations;
    if (improves(r, current, target_se, cap)) {
      current = std::move(r);
      ++stats.moves_accepted;
      return true;
    }
    return false;
  };

  // One scan in the fixed order; returns true as soon as a move is accepted.
  const auto scan = [&]() {
    const Deployment& d = current.deployment;
    for (std::size_t l = 0; l < num_rus; ++l) {
      if (!d.is_active(l)) continue;
      Deployment c = d;
      c.ru_state[l] = RuState::kOff;
      c.ru_wavelength[l].reset();
      if (try_move(with_clusters(std::move(c), scenario, model))) return true;
    }
    for (std::size_t l = 0; l < num_rus; ++l) {
      if (d.is_active(l)) continue;
      Deployment c = d;
      c.ru_wavelength[l] = wavelength_for_new_ru(d, model);
      c.ru_state[l] = RuState::kActive;
      if (try_move(with_clusters(std::move(c), scenario, model))) return true;
    }
    for (std::size_t a = 0; a < num_rus; ++a) {
      if (!d.is_active(a)) continue;
      for (std::size_t b = 0; b < num_rus; ++b) {
        if (d.is_active(b)) continue;
        Deployment c = d;
        c.ru_wavelength[b] = c.ru_wavelength[a];
        c.ru_wavelength[a].reset();
        c.ru_state[a] = RuState::kOff;
        c.ru_state[b] = RuState::kActive;
        if (try_move(with_clusters(std::move(c), scenario, model))) return true;
      }
    }
    for (std::size_t a = 0; a < num_rus; ++a) {
      if (!d.is_active(a)) continue;
      for (std::size_t a2 = a + 1; a2 < num_rus; ++a2) {
        if (!d.is_active(a2)) continue;
        for (std::size_t b = 0; b < num_rus; ++b) {
          if (d.is_active(b)) continue;
          Deployment c = d;
          c.ru_wavelength[b] = c.ru_wavelength[a];
          c.ru_wavelength[a].reset();
          c.ru_wavelength[a2].reset();
          c.ru_state[a] = RuState::kOff;
          c.ru_state[a2] = RuState::kOff;
          c.ru_state[b] = RuState::kActive;
          if (try_move(with_clusters(std::move(c), scenario, model))) return true;
        }
      }
    }
    const auto targets = candidate_wavelengths(d, num_w);
    for (std::size_t l = 0; l < num_rus; ++l) {
      if (!d.is_active(l)) continue;
      for (std::size_t w : targets) {
        if (w == *d.ru_wavelength[l]) continue;
        Deployment c = d;
        c.ru_wavelength[l] = w;
        if (try_move(c)) return true;
      }
    }
    for (std::size_t k = 0; k < num_ues; ++k) {
      if (d.clusters.serving[k].empty()) continue;
      for (std::size_t w : targets) {
        if (w == d.ue_anchor[k]) continue;
        Deployment c = d;
        c.ue_anchor[k] = w;
        if (try_move(c)) return true;
      }
    }
    for (std::size_t a = 0; a < num_rus; ++a) {
      if (!d.is_active(a)) continue;
      for (std::size_t b = a + 1; b < num_rus; ++b) {
        if (!d.is_active(b) || d.ru_wavelength[a] == d.ru_wavelength[b]) continue;
        Deployment c = d;
        std::swap(c.ru_wavelength[a], c.ru_wavelength[b]);
        if (try_move(c)) return true;
      }
    }
    return false;
  };

  while (true) {
    if (stats.iterations >= limit) {
      stats.hit_iteration_limit = true;
      break;
    }
    ++stats.iterations;
    if (!scan()) break;
  }
  current.stats = stats;
  return current;
}

OptResult optimize_greedy(const Scenario& scenario, const SystemModel& model, double target_se) {
  model.validate();
  const std::size_t num_rus = scenario.num_rus();
  const std::size_t prefix = feasible_prefix_length(scenario, model, target_se);
  const auto order = rank_rus(scenario);

  Deployment d = empty_deployment(scenario);
  std::vector<bool> active(num_rus, false);
  for (std::size_t i = 0; i < prefix; ++i) active[order[i]] = true;
  for (std::size_t l = 0; l < num_rus; ++l) {
    if (active[l]) d.ru_state[l] = RuState::kActive;
  }
  d.ru_wavelength = pack_wavelengths(active, model);
  d = with_clusters(std::move(d), scenario, model);
  d.ue_anchor = anchor_by_majority(d.clusters, d.ru_wavelength);

  OptResult start = evaluate(d, scenario, model, target_se);
  start.stats = {};
  start.stats.evaluations = 1;
  return local_search(std::move(start), scenario, model, target_se);
}

OptResult consolidate_sleep(const OptResult& result, const Scenario& scenario,
                            const SystemModel& model, double target_se) {
  if (!result.feasible) return result;
  OptResult current = result;
  SearchStats stats = result.stats;

  while (true) {
    ++stats.iterations;
    const Deployment& d = current.deployment;
    std::vector<std::size_t> candidates;
    for (std::size_t l = 0; l < d.num_rus(); ++l) {
      if (d.is_active(l)) candidates.push_back(l);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return d.alloc.ru_tx_sum(a) < d.alloc.ru_tx_sum(b);
    });

    bool committed = false;
    for (std::size_t l : candidates) {
      Deployment trial = d;
      trial.ru_state[l] = RuState::kSleep;
      trial.ru_wavelength[l].reset();
      for (auto& set : trial.clusters.serving) {
        set.erase(std::remove(set.begin(), set.end(), l), set.end());
      }
      OptResult r = evaluate(trial, scenario, model, target_se);
      ++stats.evaluations;
      if (r.feasible && r.breakdown.total_w < current.breakdown.total_w - kImprovementEps) {
        current = std::move(r);
        ++stats.moves_accepted;
        committed = true;
        break;
      }
    }
    if (!committed) break;
  }
  current.stats = stats;
  return current;
}

}  // namespace cfpon
