// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_SERIALIZE_HPP
#define CFPON_SERIALIZE_HPP

#include <nlohmann/json.hpp>

#include "cfpon/orchestrator.hpp"

namespace cfpon {

nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const Deployment& deployment);
nlohmann::json to_json(const PowerBreakdown& breakdown);
/// Summary fields plus the full deployment.
nlohmann::json to_json(const OptResult& result, std::size_t num_wavelengths);

/// Inverse of to_json(Deployment). Throws StructuralError on malformed input.
Deployment deployment_from_json(const nlohmann::json& doc);

}  // namespace cfpon

#endif  // CFPON_SERIALIZE_HPP
