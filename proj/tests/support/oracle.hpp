// SPDX-License-Identifier: Apache-2.0
//
// Straight-line re-implementations of the model used as test oracles. Nothing
// here calls into the library's numerics; only the plain data types are
// shared.
#ifndef CFPON_TESTS_ORACLE_HPP
#define CFPON_TESTS_ORACLE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cfpon/orchestrator.hpp"

namespace oracle {

inline double sinr(const cfpon::Scenario& s, const cfpon::Deployment& d, std::size_t k) {
  const std::size_t L = s.num_rus();
  const std::size_t K = s.num_ues();
  double coherent = 0.0;
  for (std::size_t l : d.clusters.serving[k]) coherent += std::sqrt(d.alloc.p(l, k) * s.beta(l, k));
  double interference = 0.0;
  for (std::size_t l = 0; l < L; ++l) {
    double tx = 0.0;
    for (std::size_t j = 0; j < K; ++j) tx += d.alloc.p(l, j);
    interference += s.beta(l, k) * tx;
  }
  return static_cast<double>(s.antennas_per_ru) * coherent * coherent /
         (interference + s.noise_power_w);
}

inline double gops_on(const cfpon::Deployment& d, std::size_t g, std::size_t W,
                      const cfpon::PowerParams& p) {
  auto gpp_of = [&](std::size_t l) { return *d.ru_wavelength[l] % W; };
  double gops = 0.0;
  for (std::size_t k = 0; k < d.num_ues(); ++k) {
    const auto& S = d.clusters.serving[k];
    if (S.empty()) continue;
    if (d.ue_anchor[k] == g) gops += p.c_central;
    for (std::size_t l : S) {
      if (gpp_of(l) == g) gops += p.c_precode;
      if (gpp_of(l) == g && d.ue_anchor[k] != g) gops += p.c_forward;
      if (d.ue_anchor[k] == g && gpp_of(l) != g) gops += p.c_forward;
    }
  }
  return gops;
}

struct Verdict {
  bool ok = true;
  std::string why;

  void fail(const std::string& reason) {
    if (ok) why = reason;
    ok = false;
  }
};

/// Re-checks every constraint of a deployment claimed feasible.
inline Verdict recheck(const cfpon::Scenario& s, const cfpon::Deployment& d,
                       const cfpon::SystemModel& m, double target_se) {
  Verdict v;
  const std::size_t L = s.num_rus();
  const std::size_t K = s.num_ues();
  const std::size_t W = m.topology.num_wavelengths;
  if (d.ru_state.size() != L || d.ue_anchor.size() != K || d.clusters.serving.size() != K) {
    v.fail("shape");
    return v;
  }
  for (std::size_t l = 0; l < L; ++l) {
    const bool active = d.ru_state[l] == cfpon::RuState::kActive;
    if (active && (!d.ru_wavelength[l] || *d.ru_wavelength[l] >= W)) v.fail("active RU without wavelength");
    double tx = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      if (d.alloc.p(l, k) < 0.0) v.fail("negative power");
      tx += d.alloc.p(l, k);
    }
    if (!active && tx != 0.0) v.fail("inactive RU transmits");
    if (tx > m.per_ru_max_w * (1.0 + 1e-12)) v.fail("per-RU power cap exceeded");
  }
  if (!v.ok) return v;
  for (std::size_t k = 0; k < K; ++k) {
    if (d.ue_anchor[k] >= W) v.fail("anchor out of range");
    for (std::size_t l : d.clusters.serving[k]) {
      if (l >= L || d.ru_state[l] != cfpon::RuState::kActive) v.fail("serving RU not active");
    }
  }
  if (!v.ok) return v;
  for (std::size_t k = 0; k < K; ++k) {
    const double se = std::log2(1.0 + sinr(s, d, k));
    if (se < target_se * (1.0 - 1e-9)) v.fail("UE " + std::to_string(k) + " below SE target");
  }
  std::vector<double> fh(W, 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    if (d.ru_state[l] == cfpon::RuState::kActive) fh[*d.ru_wavelength[l]] += m.fronthaul_rate_bps;
  }
  for (std::size_t w = 0; w < W; ++w) {
    if (fh[w] > m.topology.wavelength_capacity_bps) v.fail("wavelength over capacity");
    if (gops_on(d, w, W, m.power) > m.power.gpp_capacity) v.fail("GPP overloaded");
  }
  return v;
}

/// Total power from the model definitions, summed in plain index order.
inline double total_power(const cfpon::Deployment& d, const cfpon::SystemModel& m) {
  const auto& p = m.power;
  const std::size_t W = m.topology.num_wavelengths;
  double total = p.p_olt_fixed;
  std::vector<bool> powered(W, false);
  for (std::size_t l = 0; l < d.num_rus(); ++l) {
    if (d.ru_state[l] == cfpon::RuState::kActive) {
      double tx = 0.0;
      for (std::size_t k = 0; k < d.num_ues(); ++k) tx += d.alloc.p(l, k);
      total += p.p_ru_fixed + p.pa_slope * tx + p.p_onu;
      powered[*d.ru_wavelength[l] % W] = true;
    } else if (d.ru_state[l] == cfpon::RuState::kSleep) {
      total += p.p_ru_sleep;
    }
  }
  for (std::size_t k = 0; k < d.num_ues(); ++k) {
    if (!d.clusters.serving[k].empty()) powered[d.ue_anchor[k]] = true;
  }
  for (std::size_t g = 0; g < W; ++g) {
    if (!powered[g]) continue;
    const double load = gops_on(d, g, W, p) / p.gpp_capacity;
    total += p.p_lc + p.p_gpp_idle + (p.p_gpp_max - p.p_gpp_idle) * load;
  }
  return total;
}

/// Small deterministic helper for hand-rolled generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::size_t range(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1));
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Random structurally valid deployment: RU states, wavelengths and anchors
/// drawn at random, clusters formed over the active RUs per the model.
inline cfpon::Deployment random_deployment(const cfpon::Scenario& s, const cfpon::SystemModel& m,
                                           Gen& gen) {
  const std::size_t L = s.num_rus();
  const std::size_t K = s.num_ues();
  const std::size_t W = m.topology.num_wavelengths;
  cfpon::Deployment d;
  d.ru_state.assign(L, cfpon::RuState::kOff);
  d.ru_wavelength.assign(L, std::nullopt);
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t pick = gen.range(0, 5);
    if (pick < 4) {
      d.ru_state[l] = cfpon::RuState::kActive;
      d.ru_wavelength[l] = gen.range(0, W - 1);
    } else if (pick == 4) {
      d.ru_state[l] = cfpon::RuState::kSleep;
    }
  }
  d.ue_anchor.resize(K);
  for (auto& a : d.ue_anchor) a = gen.range(0, W - 1);
  d.clusters = cfpon::form_clusters(s, m.clusters, d.active_mask());
  d.alloc.p = cfpon::Matrix(L, K);
  return d;
}

}  // namespace oracle

#endif  // CFPON_TESTS_ORACLE_HPP
