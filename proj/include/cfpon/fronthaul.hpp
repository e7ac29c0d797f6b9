// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_FRONTHAUL_HPP
#define CFPON_FRONTHAUL_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace cfpon {

struct Deployment;

/// TWDM-PON plus O-Cloud wiring. Line card w, wavelength w and GPP stack w
/// are the same index; every RU has its own ONU.
struct PonTopology {
  std::size_t num_wavelengths = 4;
  double wavelength_capacity_bps = 10e9;

  void validate() const;
};

/// eCPRI user-plane parameters for the 7.2 split (frequency-domain IQ per
/// spatial stream).
struct Split72Config {
  std::size_t subcarriers = 3276;
  double symbols_per_second = 28000.0;
  std::size_t iq_bits = 9;
  std::size_t streams = 4;
  double overhead = 1.1;

  void validate() const;
};

/// subcarriers * symbols/s * 2 * iq_bits * streams * overhead.
double fronthaul_rate_split72(const Split72Config& cfg);

/// Time-domain split 8 rate: sample_rate * 2 * iq_bits * antennas.
double fronthaul_rate_split8(double sample_rate_hz, std::size_t iq_bits, std::size_t antennas);

struct CapacityViolation {
  std::size_t wavelength = 0;
  double load_bps = 0.0;
  double capacity_bps = 0.0;
};

/// Offered fronthaul load per wavelength (active RUs only).
std::vector<double> wavelength_loads(const Deployment& deployment, const PonTopology& topology,
                                     double rate_per_ru_bps);

/// Empty iff every wavelength carries at most its capacity. Throws
/// StructuralError when an active RU has no wavelength.
std::vector<CapacityViolation> check_wavelength_capacity(const Deployment& deployment,
                                                         const PonTopology& topology,
                                                         double rate_per_ru_bps);

/// GPP index serving each RU (the RU's wavelength); nullopt for RUs that are
/// not connected.
std::vector<std::optional<std::size_t>> ru_to_gpp(const Deployment& deployment,
                                                  const PonTopology& topology);

}  // namespace cfpon

#endif  // CFPON_FRONTHAUL_HPP
