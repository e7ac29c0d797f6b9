// SPDX-License-Identifier: Apache-2.0
#include "cfpon/cfmimo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cfpon/errors.hpp"

namespace cfpon {

namespace {

std::vector<double> ru_tx_sums(const PowerAllocation& alloc) {
  std::vector<double> sums(alloc.p.rows(), 0.0);
  for (std::size_t l = 0; l < alloc.p.rows(); ++l) sums[l] = alloc.ru_tx_sum(l);
  return sums;
}

double sinr_with_sums(std::size_t k, const PowerAllocation& alloc,
                      const ClusterAssignment& clusters, const Scenario& scenario,
                      const std::vector<double>& tx_sums) {
  double coherent = 0.0;
  for (std::size_t l : clusters.serving[k]) coherent += std::sqrt(alloc.p(l, k) * scenario.beta(l, k));
  const double signal = static_cast<double>(scenario.antennas_per_ru) * coherent * coherent;
  if (signal == 0.0) return 0.0;
  double interference = 0.0;
  for (std::size_t l = 0; l < scenario.num_rus(); ++l) interference += scenario.beta(l, k) * tx_sums[l];
  return signal / (interference + scenario.noise_power_w);
}

}  // namespace

std::string to_string(const ClusterSpec& spec) {
  switch (spec.mode) {
    case ClusterMode::kCfAll:
      return "cf_all";
    case ClusterMode::kSmallCell:
      return "small_cell";
    case ClusterMode::kCfTopM:
      return "cf_top_m(" + std::to_string(spec.top_m) + ")";
  }
  return "?";
}

ClusterSpec parse_cluster_spec(const std::string& text) {
  if (text == "cf_all") return {ClusterMode::kCfAll, 0};
  if (text == "small_cell") return {ClusterMode::kSmallCell, 1};
  const std::string prefix = "cf_top_m(";
  if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
    const std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const auto m = static_cast<std::size_t>(std::stoull(digits));
      if (m < 1) throw ConfigError("cluster_mode: cf_top_m requires M >= 1");
      return {ClusterMode::kCfTopM, m};
    }
  }
  throw ConfigError("cluster_mode: expected cf_all, small_cell or cf_top_m(M), got '" + text + "'");
}

double PowerAllocation::ru_tx_sum(std::size_t l) const {
  const auto row = p.row(l);
  return std::accumulate(row.begin(), row.end(), 0.0);
}

double SEResult::min_se() const {
  if (se.empty()) return 0.0;
  return *std::min_element(se.begin(), se.end());
}

ClusterAssignment form_clusters(const Scenario& scenario, const ClusterSpec& spec,
                                const std::vector<bool>& active) {
  if (active.size() != scenario.num_rus()) {
    throw StructuralError("form_clusters: active mask has " + std::to_string(active.size()) +
                          " entries for " + std::to_string(scenario.num_rus()) + " RUs");
  }
  if (spec.mode == ClusterMode::kCfTopM && spec.top_m < 1) {
    throw ConfigError("cluster_mode: cf_top_m requires M >= 1");
  }
  std::vector<std::size_t> active_rus;
  for (std::size_t l = 0; l < active.size(); ++l) {
    if (active[l]) active_rus.push_back(l);
  }

  ClusterAssignment out;
  out.spec = spec;
  out.serving.resize(scenario.num_ues());
  for (std::size_t k = 0; k < scenario.num_ues(); ++k) {
    auto& set = out.serving[k];
    if (spec.mode == ClusterMode::kCfAll) {
      set = active_rus;
      continue;
    }
    std::vector<std::size_t> ranked = active_rus;
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      return scenario.beta(a, k) > scenario.beta(b, k);
    });
    const std::size_t keep = spec.mode == ClusterMode::kSmallCell ? 1 : spec.top_m;
    ranked.resize(std::min(keep, ranked.size()));
    std::sort(ranked.begin(), ranked.end());
    set = std::move(ranked);
  }
  return out;
}

double sinr(std::size_t k, const PowerAllocation& alloc, const ClusterAssignment& clusters,
            const Scenario& scenario) {
  return sinr_with_sums(k, alloc, clusters, scenario, ru_tx_sums(alloc));
}

SEResult se_per_ue(const PowerAllocation& alloc, const ClusterAssignment& clusters,
                   const Scenario& scenario) {
  const auto sums = ru_tx_sums(alloc);
  SEResult out;
  out.sinr.resize(scenario.num_ues());
  out.se.resize(scenario.num_ues());
  for (std::size_t k = 0; k < scenario.num_ues(); ++k) {
    out.sinr[k] = sinr_with_sums(k, alloc, clusters, scenario, sums);
    out.se[k] = std::log2(1.0 + out.sinr[k]);
  }
  return out;
}

PowerAllocation scaled_allocation(double scale, double per_ru_max_w,
                                  const ClusterAssignment& clusters, const Scenario& scenario) {
  const std::size_t num_rus = scenario.num_rus();
  std::vector<double> served_beta(num_rus, 0.0);
  for (std::size_t k = 0; k < clusters.num_ues(); ++k) {
    for (std::size_t l : clusters.serving[k]) served_beta[l] += scenario.beta(l, k);
  }
  PowerAllocation alloc{Matrix(num_rus, scenario.num_ues()), per_ru_max_w};
  if (scale == 0.0) return alloc;
  for (std::size_t k = 0; k < clusters.num_ues(); ++k) {
    for (std::size_t l : clusters.serving[k]) {
      alloc.p(l, k) = scale * per_ru_max_w * scenario.beta(l, k) / served_beta[l];
    }
  }
  return alloc;
}

PowerControlResult power_control(double target_se, const ClusterAssignment& clusters,
                                 const Scenario& scenario, const std::vector<bool>& active,
                                 double per_ru_max_w) {
  if (!(target_se >= 0.0) || !std::isfinite(target_se)) {
    throw DomainError("power_control: target SE must be finite and >= 0");
  }
  if (clusters.num_ues() != scenario.num_ues() || active.size() != scenario.num_rus()) {
    throw StructuralError("power_control: cluster/active sizes do not match the scenario");
  }
  for (std::size_t k = 0; k < clusters.num_ues(); ++k) {
    for (std::size_t l : clusters.serving[k]) {
      if (l >= active.size() || !active[l]) {
        throw StructuralError("power_control: UE " + std::to_string(k) +
                              " is served by inactive RU " + std::to_string(l));
      }
    }
  }

  const auto min_se_at = [&](double scale) {
    return se_per_ue(scaled_allocation(scale, per_ru_max_w, clusters, scenario), clusters, scenario)
        .min_se();
  };

  PowerControlResult out;
  out.min_se_at_full_power = min_se_at(1.0);
  if (scenario.num_ues() == 0 || target_se == 0.0) {
    out.feasible = true;
    out.scale = 0.0;
    out.alloc = scaled_allocation(0.0, per_ru_max_w, clusters, scenario);
    return out;
  }
  if (out.min_se_at_full_power < target_se) {
    out.feasible = false;
    out.scale = 1.0;
    out.alloc = scaled_allocation(1.0, per_ru_max_w, clusters, scenario);
    return out;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kPowerControlTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (min_se_at(mid) >= target_se) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.feasible = true;
  out.scale = hi;
  out.alloc = scaled_allocation(hi, per_ru_max_w, clusters, scenario);
  return out;
}

}  // namespace cfpon
