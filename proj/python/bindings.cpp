// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfpon/config.hpp"
#include "cfpon/errors.hpp"
#include "cfpon/serialize.hpp"
#include "cfpon/sweep.hpp"

namespace py = pybind11;
using namespace cfpon;

namespace {

std::vector<std::vector<double>> to_rows(const Matrix& m) {
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

std::vector<bool> default_mask(const Scenario& s, const std::optional<std::vector<bool>>& active) {
  return active.value_or(std::vector<bool>(s.num_rus(), true));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cell-free O-RAN over TWDM-PON power simulator and optimizer";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<LimitError>(m, "LimitError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("num_rus", &ScenarioConfig::num_rus)
      .def_readwrite("num_ues", &ScenarioConfig::num_ues)
      .def_readwrite("area_side_m", &ScenarioConfig::area_side_m)
      .def_readwrite("antennas_per_ru", &ScenarioConfig::antennas_per_ru)
      .def_readwrite("bandwidth_hz", &ScenarioConfig::bandwidth_hz)
      .def_readwrite("noise_dbm", &ScenarioConfig::noise_dbm)
      .def_readwrite("shadowing_std_db", &ScenarioConfig::shadowing_std_db)
      .def_readwrite("grid_jitter", &ScenarioConfig::grid_jitter)
      .def_readwrite("min_distance_m", &ScenarioConfig::min_distance_m);

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("num_rus", &Scenario::num_rus)
      .def_property_readonly("num_ues", &Scenario::num_ues)
      .def_readonly("area_side_m", &Scenario::area_side_m)
      .def_readonly("antennas_per_ru", &Scenario::antennas_per_ru)
      .def_readonly("noise_power_w", &Scenario::noise_power_w)
      .def_readonly("seed", &Scenario::seed)
      .def_property_readonly("beta", [](const Scenario& s) { return to_rows(s.beta); })
      .def_property_readonly("ru_positions",
                             [](const Scenario& s) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& p : s.ru_positions) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def_property_readonly("ue_positions",
                             [](const Scenario& s) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& p : s.ue_positions) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def("to_json", [](const Scenario& s) { return to_json(s).dump(); });

  py::class_<PowerParams>(m, "PowerParams")
      .def(py::init<>())
      .def_readwrite("p_ru_fixed", &PowerParams::p_ru_fixed)
      .def_readwrite("p_ru_sleep", &PowerParams::p_ru_sleep)
      .def_readwrite("pa_slope", &PowerParams::pa_slope)
      .def_readwrite("p_onu", &PowerParams::p_onu)
      .def_readwrite("p_olt_fixed", &PowerParams::p_olt_fixed)
      .def_readwrite("p_lc", &PowerParams::p_lc)
      .def_readwrite("p_gpp_idle", &PowerParams::p_gpp_idle)
      .def_readwrite("p_gpp_max", &PowerParams::p_gpp_max)
      .def_readwrite("gpp_capacity", &PowerParams::gpp_capacity)
      .def_readwrite("c_central", &PowerParams::c_central)
      .def_readwrite("c_precode", &PowerParams::c_precode)
      .def_readwrite("c_forward", &PowerParams::c_forward);

  py::class_<PowerBreakdown>(m, "PowerBreakdown")
      .def_readonly("radio_w", &PowerBreakdown::radio_w)
      .def_readonly("pon_w", &PowerBreakdown::pon_w)
      .def_readonly("cloud_w", &PowerBreakdown::cloud_w)
      .def_readonly("total_w", &PowerBreakdown::total_w);

  py::class_<Split72Config>(m, "Split72Config")
      .def(py::init<>())
      .def_readwrite("subcarriers", &Split72Config::subcarriers)
      .def_readwrite("symbols_per_second", &Split72Config::symbols_per_second)
      .def_readwrite("iq_bits", &Split72Config::iq_bits)
      .def_readwrite("streams", &Split72Config::streams)
      .def_readwrite("overhead", &Split72Config::overhead);

  py::class_<PonTopology>(m, "PonTopology")
      .def(py::init<>())
      .def_readwrite("num_wavelengths", &PonTopology::num_wavelengths)
      .def_readwrite("wavelength_capacity_bps", &PonTopology::wavelength_capacity_bps);

  py::class_<SystemModel>(m, "SystemModel")
      .def(py::init<>())
      .def_readwrite("topology", &SystemModel::topology)
      .def_readwrite("fronthaul_rate_bps", &SystemModel::fronthaul_rate_bps)
      .def_readwrite("power", &SystemModel::power)
      .def_readwrite("per_ru_max_w", &SystemModel::per_ru_max_w)
      .def_property(
          "cluster_mode", [](const SystemModel& s) { return to_string(s.clusters); },
          [](SystemModel& s, const std::string& text) { s.clusters = parse_cluster_spec(text); });

  py::class_<Deployment>(m, "Deployment")
      .def_property_readonly("ru_state",
                             [](const Deployment& d) {
                               std::vector<std::string> out;
                               for (RuState s : d.ru_state) out.push_back(to_string(s));
                               return out;
                             })
      .def_readonly("ru_wavelength", &Deployment::ru_wavelength)
      .def_readonly("ue_anchor", &Deployment::ue_anchor)
      .def_property_readonly("serving", [](const Deployment& d) { return d.clusters.serving; })
      .def_property_readonly("power", [](const Deployment& d) { return to_rows(d.alloc.p); })
      .def("to_json", [](const Deployment& d) { return to_json(d).dump(); })
      .def_static("from_json",
                  [](const std::string& text) { return deployment_from_json(nlohmann::json::parse(text)); });

  py::class_<SearchStats>(m, "SearchStats")
      .def_readonly("iterations", &SearchStats::iterations)
      .def_readonly("moves_accepted", &SearchStats::moves_accepted)
      .def_readonly("evaluations", &SearchStats::evaluations)
      .def_readonly("hit_iteration_limit", &SearchStats::hit_iteration_limit);

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("deployment", &OptResult::deployment)
      .def_readonly("breakdown", &OptResult::breakdown)
      .def_readonly("feasible", &OptResult::feasible)
      .def_readonly("se_met", &OptResult::se_met)
      .def_readonly("se", &OptResult::se)
      .def_readonly("min_se", &OptResult::min_se)
      .def_readonly("power_scale", &OptResult::power_scale)
      .def_readonly("overloaded_gpps", &OptResult::overloaded_gpps)
      .def_readonly("stats", &OptResult::stats)
      .def_property_readonly("active_rus", &OptResult::active_rus)
      .def("active_gpps", &OptResult::active_gpps, py::arg("num_wavelengths"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_static("from_json",
                  [](const std::string& text) { return ExperimentConfig::from_json(nlohmann::json::parse(text)); })
      .def("to_json", [](const ExperimentConfig& c) { return c.to_json().dump(); })
      .def("system_model", &ExperimentConfig::system_model)
      .def_readwrite("scenario", &ExperimentConfig::scenario)
      .def_readwrite("target_se", &ExperimentConfig::target_se)
      .def_readwrite("seed", &ExperimentConfig::seed);

  m.def("distance", [](std::pair<double, double> p, std::pair<double, double> q) {
    return distance({p.first, p.second}, {q.first, q.second});
  });
  m.def("path_loss_gain", &path_loss_gain, py::arg("distance_m"));
  m.def("generate_scenario", &generate_scenario, py::arg("config"), py::arg("seed"));
  m.def("fronthaul_rate_split72", &fronthaul_rate_split72, py::arg("config"));
  m.def("fronthaul_rate_split8", &fronthaul_rate_split8, py::arg("sample_rate_hz"),
        py::arg("iq_bits"), py::arg("antennas"));
  m.def(
      "ru_power",
      [](const std::string& state, double tx, const PowerParams& p) {
        return ru_power(parse_ru_state(state), tx, p);
      },
      py::arg("state"), py::arg("tx_sum_w"), py::arg("params"));
  m.def("gpp_power", &gpp_power, py::arg("active"), py::arg("load"), py::arg("params"));
  m.def(
      "min_se_with_power_control",
      [](const Scenario& s, double target, const std::string& mode, double per_ru_max,
         std::optional<std::vector<bool>> active) {
        const auto mask = default_mask(s, active);
        const auto clusters = form_clusters(s, parse_cluster_spec(mode), mask);
        const auto pc = power_control(target, clusters, s, mask, per_ru_max);
        return py::make_tuple(pc.feasible, pc.scale,
                              se_per_ue(pc.alloc, clusters, s).min_se(), pc.min_se_at_full_power);
      },
      py::arg("scenario"), py::arg("target_se"), py::arg("cluster_mode") = "cf_all",
      py::arg("per_ru_max_w") = 1.0, py::arg("active") = py::none(),
      "Returns (feasible, scale, min_se_at_scale, min_se_at_full_power).");
  m.def("evaluate", &evaluate, py::arg("deployment"), py::arg("scenario"), py::arg("model"),
        py::arg("target_se"));
  m.def("total_power", &total_power, py::arg("deployment"), py::arg("topology"), py::arg("params"));
  m.def("baseline_all_on", &baseline_all_on, py::arg("scenario"), py::arg("model"),
        py::arg("target_se"));
  m.def("optimize_greedy", &optimize_greedy, py::arg("scenario"), py::arg("model"),
        py::arg("target_se"));
  m.def(
      "optimize_exhaustive",
      [](const Scenario& s, const SystemModel& model, double target) {
        return optimize_exhaustive(s, model, target);
      },
      py::arg("scenario"), py::arg("model"), py::arg("target_se"));
  m.def("consolidate_sleep", &consolidate_sleep, py::arg("result"), py::arg("scenario"),
        py::arg("model"), py::arg("target_se"));
  m.def(
      "run_algo",
      [](const std::string& algo, const Scenario& s, const SystemModel& model, double target) {
        return run_algo(parse_algo(algo), s, model, target);
      },
      py::arg("algo"), py::arg("scenario"), py::arg("model"), py::arg("target_se"));
  m.def(
      "sweep_csv",
      [](const ExperimentConfig& cfg, const std::string& variable) {
        if (variable != "se_target" && variable != "num_ues") {
          throw ConfigError("sweep variable must be 'se_target' or 'num_ues'");
        }
        const auto var = variable == "se_target" ? SweepVariable::kSeTarget : SweepVariable::kNumUes;
        py::gil_scoped_release release;
        return format_csv(run_sweep(cfg, var));
      },
      py::arg("config"), py::arg("variable"), "Runs a sweep and returns the CSV text.");
}
