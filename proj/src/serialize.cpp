// SPDX-License-Identifier: Apache-2.0
#include "cfpon/serialize.hpp"

#include "cfpon/errors.hpp"

namespace cfpon {

using nlohmann::json;

namespace {

json points(const std::vector<Point>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back({p.x, p.y});
  return out;
}

json matrix(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    out.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return out;
}

}  // namespace

json to_json(const Scenario& s) {
  return {{"area_side_m", s.area_side_m},
          {"ru_positions", points(s.ru_positions)},
          {"ue_positions", points(s.ue_positions)},
          {"antennas_per_ru", s.antennas_per_ru},
          {"bandwidth_hz", s.bandwidth_hz},
          {"noise_power_w", s.noise_power_w},
          {"beta", matrix(s.beta)},
          {"seed", s.seed}};
}

json to_json(const Deployment& d) {
  json states = json::array();
  for (RuState s : d.ru_state) states.push_back(to_string(s));
  json wavelengths = json::array();
  for (const auto& w : d.ru_wavelength) wavelengths.push_back(w ? json(*w) : json(nullptr));
  return {{"ru_state", states},
          {"ru_wavelength", wavelengths},
          {"ue_anchor", d.ue_anchor},
          {"cluster_mode", to_string(d.clusters.spec)},
          {"serving", d.clusters.serving},
          {"per_ru_max_w", d.alloc.per_ru_max_w},
          {"power", matrix(d.alloc.p)}};
}

json to_json(const PowerBreakdown& b) {
  return {{"radio_w", b.radio_w}, {"pon_w", b.pon_w}, {"cloud_w", b.cloud_w}, {"total_w", b.total_w}};
}

json to_json(const OptResult& r, std::size_t num_wavelengths) {
  return {{"feasible", r.feasible},
          {"se_met", r.se_met},
          {"breakdown", to_json(r.breakdown)},
          {"se", r.se},
          {"min_se", r.min_se},
          {"power_scale", r.power_scale},
          {"active_rus", r.active_rus()},
          {"active_gpps", r.active_gpps(num_wavelengths)},
          {"overloaded_gpps", r.overloaded_gpps},
          {"fronthaul_violations", r.fronthaul_violations.size()},
          {"search_stats",
           {{"iterations", r.stats.iterations},
            {"moves_accepted", r.stats.moves_accepted},
            {"evaluations", r.stats.evaluations}}},
          {"deployment", to_json(r.deployment)}};
}

Deployment deployment_from_json(const json& doc) {
  try {
    Deployment d;
    for (const auto& s : doc.at("ru_state")) d.ru_state.push_back(parse_ru_state(s.get<std::string>()));
    for (const auto& w : doc.at("ru_wavelength")) {
      d.ru_wavelength.push_back(w.is_null() ? std::nullopt
                                            : std::optional<std::size_t>(w.get<std::size_t>()));
    }
    d.ue_anchor = doc.at("ue_anchor").get<std::vector<std::size_t>>();
    d.clusters.spec = parse_cluster_spec(doc.at("cluster_mode").get<std::string>());
    d.clusters.serving = doc.at("serving").get<std::vector<std::vector<std::size_t>>>();
    d.alloc.per_ru_max_w = doc.at("per_ru_max_w").get<double>();
    const auto& rows = doc.at("power");
    const std::size_t num_rows = rows.size();
    const std::size_t num_cols = num_rows == 0 ? 0 : rows.at(0).size();
    d.alloc.p = Matrix(num_rows, num_cols);
    for (std::size_t r = 0; r < num_rows; ++r) {
      if (rows.at(r).size() != num_cols) throw StructuralError("ragged power matrix");
      for (std::size_t c = 0; c < num_cols; ++c) d.alloc.p(r, c) = rows.at(r).at(c).get<double>();
    }
    // A K = 0 deployment serializes its L x 0 matrix as L empty rows.
    if (num_cols == 0) d.alloc.p = Matrix(num_rows, d.ue_anchor.size());
    return d;
  } catch (const json::exception& e) {
    throw StructuralError(std::string("deployment JSON: ") + e.what());
  } catch (const ConfigError& e) {
    throw StructuralError(std::string("deployment JSON: ") + e.what());
  }
}

}  // namespace cfpon
