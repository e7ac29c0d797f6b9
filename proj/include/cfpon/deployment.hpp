// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_DEPLOYMENT_HPP
#define CFPON_DEPLOYMENT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cfpon/cfmimo.hpp"

namespace cfpon {

/// kOff: powered down entirely (draws nothing). kSleep: sleep mode after a
/// handover, draws p_ru_sleep. Only kActive RUs transmit or hold an ONU link.
enum class RuState { kActive, kSleep, kOff };

std::string to_string(RuState state);
RuState parse_ru_state(const std::string& text);

/// One complete joint radio / fronthaul / cloud decision.
///
/// A UE is "served" iff its serving set is nonempty; only served UEs load
/// their anchor GPP. A GPP (and its line card) is powered iff its wavelength
/// carries an active RU or it anchors a served UE.
struct Deployment {
  std::vector<RuState> ru_state;
  std::vector<std::optional<std::size_t>> ru_wavelength;
  std::vector<std::size_t> ue_anchor;
  ClusterAssignment clusters;
  PowerAllocation alloc;

  std::size_t num_rus() const { return ru_state.size(); }
  std::size_t num_ues() const { return ue_anchor.size(); }
  bool is_active(std::size_t l) const { return ru_state[l] == RuState::kActive; }
  std::vector<bool> active_mask() const;
  std::size_t num_active_rus() const;

  /// Powered GPPs for a topology with `num_wavelengths` wavelengths.
  std::vector<bool> gpp_powered(std::size_t num_wavelengths) const;

  bool operator==(const Deployment&) const = default;
};

/// Throws StructuralError describing the first broken invariant.
void validate_deployment(const Deployment& deployment, std::size_t num_rus, std::size_t num_ues,
                         std::size_t num_wavelengths);

}  // namespace cfpon

#endif  // CFPON_DEPLOYMENT_HPP
