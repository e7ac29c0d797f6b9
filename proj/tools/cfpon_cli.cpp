// SPDX-License-Identifier: Apache-2.0
//
// cfpon: command-line front end.
//
//   cfpon solve    --config exp.json [--seed N] [--algo greedy+sleep] [--json] [--out dep.json]
//   cfpon sweep-se --config exp.json [--seed N] [--algo baseline,greedy+sleep] [--out fig4.csv]
//   cfpon sweep-k  --config exp.json [--seed N] [--algo baseline,greedy+sleep] [--out fig5.csv]
//
// Exit codes: 0 success, 2 config error, 3 infeasible with --strict, 4 I/O error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cfpon/config.hpp"
#include "cfpon/errors.hpp"
#include "cfpon/serialize.hpp"
#include "cfpon/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string algo;
  bool json = false;
  bool strict = false;
};

cfpon::ExperimentConfig resolve(const Options& opt) {
  cfpon::ExperimentConfig cfg =
      opt.config_path.empty() ? cfpon::ExperimentConfig{} : cfpon::load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.algo.empty()) cfg.algos = cfpon::parse_algo_list(opt.algo);
  if (!opt.out.empty()) cfg.output = opt.out;
  if (opt.strict) cfg.strict = true;
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw cfpon::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw cfpon::IoError("failed writing '" + path + "'");
}

void print_summary(std::ostream& os, cfpon::Algo algo, const cfpon::OptResult& r,
                   const cfpon::ExperimentConfig& cfg) {
  const std::size_t num_w = cfg.topology.num_wavelengths;
  os << "algo          " << cfpon::to_string(algo) << '\n'
     << "seed          " << cfg.seed << '\n'
     << "target_se     " << cfpon::format_float(cfg.target_se) << " bit/s/Hz\n"
     << "feasible      " << (r.feasible ? "yes" : "no") << '\n'
     << "total_w       " << cfpon::format_float(r.breakdown.total_w) << '\n'
     << "  radio_w     " << cfpon::format_float(r.breakdown.radio_w) << '\n'
     << "  pon_w       " << cfpon::format_float(r.breakdown.pon_w) << '\n'
     << "  cloud_w     " << cfpon::format_float(r.breakdown.cloud_w) << '\n'
     << "active_rus    " << r.active_rus() << " / " << r.deployment.num_rus() << '\n'
     << "active_gpps   " << r.active_gpps(num_w) << " / " << num_w << '\n'
     << "min_se        " << cfpon::format_float(r.min_se) << '\n'
     << "power_scale   " << cfpon::format_float(r.power_scale) << '\n'
     << "iterations    " << r.stats.iterations << " (" << r.stats.moves_accepted
     << " moves accepted)\n";
  if (!r.se_met) os << "note          SE target not met by every UE\n";
  if (!r.fronthaul_violations.empty()) {
    os << "note          " << r.fronthaul_violations.size() << " wavelength(s) over capacity\n";
  }
  if (!r.overloaded_gpps.empty()) {
    os << "note          " << r.overloaded_gpps.size() << " GPP(s) overloaded\n";
  }
}

int run_solve(const Options& opt) {
  const auto cfg = resolve(opt);
  const cfpon::Algo algo = cfg.algos.front();
  const auto scenario = cfpon::generate_scenario(cfg.scenario, cfg.seed);
  const auto model = cfg.system_model();
  const auto result = cfpon::run_algo(algo, scenario, model, cfg.target_se);

  if (opt.json) {
    nlohmann::json doc = cfpon::to_json(result, cfg.topology.num_wavelengths);
    doc["config"] = cfg.to_json();
    const std::string text = doc.dump(2) + "\n";
    if (cfg.output.empty()) {
      print_summary(std::cerr, algo, result, cfg);
      std::cout << text;
    } else {
      print_summary(std::cout, algo, result, cfg);
      write_file(cfg.output, text);
    }
  } else {
    print_summary(std::cout, algo, result, cfg);
  }
  return cfg.strict && !result.feasible ? kExitInfeasible : kExitOk;
}

int run_sweep_cmd(const Options& opt, cfpon::SweepVariable var) {
  const auto cfg = resolve(opt);
  const auto table = cfpon::run_sweep(cfg, var);
  if (cfg.output.empty()) {
    std::cout << cfpon::format_csv(table);
  } else {
    cfpon::emit_csv(table, cfg.output);
    write_file(cfg.output + ".config.json", cfg.to_json().dump(2) + "\n");
  }
  bool all_feasible = true;
  for (const auto& row : table.rows) all_feasible = all_feasible && row.result.feasible;
  return cfg.strict && !all_feasible ? kExitInfeasible : kExitOk;
}

void add_common(CLI::App* sub, Options& opt, bool with_json) {
  sub->add_option("--config", opt.config_path, "experiment config (JSON)");
  sub->add_option("--seed", opt.seed, "scenario seed (overrides config)");
  sub->add_option("--out", opt.out, "output path");
  sub->add_option("--algo", opt.algo, "comma-separated algorithms");
  sub->add_flag("--strict", opt.strict, "exit 3 if any result is infeasible");
  if (with_json) sub->add_flag("--json", opt.json, "dump the deployment as JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cell-free O-RAN over TWDM-PON power simulator and optimizer"};
  app.require_subcommand(1);
  Options opt;
  auto* solve = app.add_subcommand("solve", "solve a single operating point");
  auto* sweep_se = app.add_subcommand("sweep-se", "total power vs per-UE SE target");
  auto* sweep_k = app.add_subcommand("sweep-k", "total power vs number of UEs");
  add_common(solve, opt, true);
  add_common(sweep_se, opt, false);
  add_common(sweep_k, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*solve) return run_solve(opt);
    if (*sweep_se) return run_sweep_cmd(opt, cfpon::SweepVariable::kSeTarget);
    return run_sweep_cmd(opt, cfpon::SweepVariable::kNumUes);
  } catch (const cfpon::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const cfpon::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cfpon::LimitError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cfpon::StructuralError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}
