// SPDX-License-Identifier: Apache-2.0
#include "cfpon/deployment.hpp"

#include <algorithm>
#include <cmath>

#include "cfpon/errors.hpp"

namespace cfpon {

std::string to_string(RuState state) {
  switch (state) {
    case RuState::kActive:
      return "active";
    case RuState::kSleep:
      return "sleep";
    case RuState::kOff:
      return "off";
  }
  return "?";
}

RuState parse_ru_state(const std::string& text) {
  if (text == "active") return RuState::kActive;
  if (text == "sleep") return RuState::kSleep;
  if (text == "off") return RuState::kOff;
  throw StructuralError("unknown RU state '" + text + "'");
}

std::vector<bool> Deployment::active_mask() const {
  std::vector<bool> mask(ru_state.size());
  for (std::size_t l = 0; l < ru_state.size(); ++l) mask[l] = is_active(l);
  return mask;
}

std::size_t Deployment::num_active_rus() const {
  return static_cast<std::size_t>(std::count(ru_state.begin(), ru_state.end(), RuState::kActive));
}

std::vector<bool> Deployment::gpp_powered(std::size_t num_wavelengths) const {
  std::vector<bool> on(num_wavelengths, false);
  for (std::size_t l = 0; l < ru_state.size(); ++l) {
    if (is_active(l) && ru_wavelength[l] && *ru_wavelength[l] < num_wavelengths) {
      on[*ru_wavelength[l]] = true;
    }
  }
  for (std::size_t k = 0; k < ue_anchor.size(); ++k) {
    if (k < clusters.serving.size() && !clusters.serving[k].empty() &&
        ue_anchor[k] < num_wavelengths) {
      on[ue_anchor[k]] = true;
    }
  }
  return on;
}

void validate_deployment(const Deployment& d, std::size_t num_rus, std::size_t num_ues,
                         std::size_t num_wavelengths) {
  const auto fail = [](const std::string& what) { throw StructuralError("deployment: " + what); };
  if (d.ru_state.size() != num_rus || d.ru_wavelength.size() != num_rus) {
    fail("expected " + std::to_string(num_rus) + " RU entries");
  }
  if (d.ue_anchor.size() != num_ues || d.clusters.serving.size() != num_ues) {
    fail("expected " + std::to_string(num_ues) + " UE entries");
  }
  for (std::size_t l = 0; l < num_rus; ++l) {
    if (d.is_active(l)) {
      if (!d.ru_wavelength[l]) fail("active RU " + std::to_string(l) + " has no wavelength");
      if (*d.ru_wavelength[l] >= num_wavelengths) {
        fail("RU " + std::to_string(l) + " mapped to wavelength " +
             std::to_string(*d.ru_wavelength[l]) + " >= W");
      }
    } else if (d.ru_wavelength[l]) {
      fail("inactive RU " + std::to_string(l) + " holds a wavelength");
    }
  }
  for (std::size_t k = 0; k < num_ues; ++k) {
    if (d.ue_anchor[k] >= num_wavelengths) {
      fail("UE " + std::to_string(k) + " anchored on GPP " + std::to_string(d.ue_anchor[k]) +
           " >= W");
    }
    const auto& set = d.clusters.serving[k];
    if (!std::is_sorted(set.begin(), set.end()) ||
        std::adjacent_find(set.begin(), set.end()) != set.end()) {
      fail("serving set of UE " + std::to_string(k) + " is not strictly increasing");
    }
    for (std::size_t l : set) {
      if (l >= num_rus || !d.is_active(l)) {
        fail("UE " + std::to_string(k) + " served by inactive or unknown RU " + std::to_string(l));
      }
    }
  }

  const Matrix& p = d.alloc.p;
  if (p.rows() == 0 && p.cols() == 0) return;  // not yet allocated
  if (p.rows() != num_rus || p.cols() != num_ues) fail("power allocation has wrong shape");
  for (std::size_t l = 0; l < num_rus; ++l) {
    double sum = 0.0;
    for (std::size_t k = 0; k < num_ues; ++k) {
      const double v = p(l, k);
      if (!(v >= 0.0) || !std::isfinite(v)) fail("negative or non-finite power");
      if (v > 0.0 && !std::binary_search(d.clusters.serving[k].begin(),
                                         d.clusters.serving[k].end(), l)) {
        fail("RU " + std::to_string(l) + " transmits to UE " + std::to_string(k) +
             " outside its serving set");
      }
      sum += v;
    }
    if (sum > d.alloc.per_ru_max_w * (1.0 + 1e-12)) {
      fail("RU " + std::to_string(l) + " exceeds its per-RU power budget");
    }
  }
}

}  // namespace cfpon
