// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cfpon/cfmimo.hpp"
#include "cfpon/errors.hpp"
#include "support/builders.hpp"
#include "support/oracle.hpp"

using cfpon::ClusterMode;
using cfpon::ClusterSpec;

namespace {

std::vector<bool> all_on(std::size_t L) { return std::vector<bool>(L, true); }

// Scenario with random gains and a hand-rolled random allocation that
// respects the cluster structure.
struct RandomCase {
  cfpon::Scenario scenario;
  cfpon::Deployment deployment;
};

RandomCase random_case(std::uint64_t seed) {
  oracle::Gen gen(seed);
  cfpon::ScenarioConfig cfg;
  cfg.num_rus = gen.range(1, 12);
  cfg.num_ues = gen.range(1, 10);
  cfg.antennas_per_ru = gen.range(1, 64);
  RandomCase rc;
  rc.scenario = cfpon::generate_scenario(cfg, seed);
  std::vector<bool> active(cfg.num_rus);
  for (std::size_t l = 0; l < cfg.num_rus; ++l) active[l] = gen.coin(0.7);
  active[0] = true;
  const ClusterSpec spec =
      gen.coin() ? ClusterSpec{} : ClusterSpec{ClusterMode::kCfTopM, gen.range(1, 4)};
  rc.deployment = build::empty(cfg.num_rus, cfg.num_ues);
  rc.deployment.clusters = cfpon::form_clusters(rc.scenario, spec, active);
  for (std::size_t k = 0; k < cfg.num_ues; ++k) {
    for (std::size_t l : rc.deployment.clusters.serving[k]) {
      rc.deployment.alloc.p(l, k) = gen.uniform(0.0, 0.3);
    }
  }
  return rc;
}

}  // namespace

TEST_CASE("cluster modes") {
  const auto s = build::scenario({{1e-9, 3e-9}, {5e-9, 1e-9}, {2e-9, 2e-9}}, 4, 1e-13);
  SUBCASE("cf_all serves every UE from every active RU") {
    const auto c = cfpon::form_clusters(s, {}, all_on(3));
    CHECK(c.serving == std::vector<std::vector<std::size_t>>{{0, 1, 2}, {0, 1, 2}});
  }
  SUBCASE("small_cell picks the argmax") {
    const auto c = cfpon::form_clusters(s, {ClusterMode::kSmallCell, 1}, all_on(3));
    CHECK(c.serving == std::vector<std::vector<std::size_t>>{{1}, {0}});
  }
  SUBCASE("small_cell only looks at active RUs") {
    const auto c = cfpon::form_clusters(s, {ClusterMode::kSmallCell, 1}, {true, false, true});
    CHECK(c.serving == std::vector<std::vector<std::size_t>>{{2}, {0}});
  }
  SUBCASE("top-M returns the M strongest sorted by index") {
    const auto c = cfpon::form_clusters(s, {ClusterMode::kCfTopM, 2}, all_on(3));
    CHECK(c.serving == std::vector<std::vector<std::size_t>>{{1, 2}, {0, 2}});
  }
  SUBCASE("top-M larger than the active set keeps every active RU") {
    const auto c = cfpon::form_clusters(s, {ClusterMode::kCfTopM, 5}, {true, true, false});
    CHECK(c.serving == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 1}});
  }
  SUBCASE("no active RU leaves every set empty") {
    const auto c = cfpon::form_clusters(s, {}, {false, false, false});
    CHECK(c.serving == std::vector<std::vector<std::size_t>>{{}, {}});
  }
}

TEST_CASE("top-M ties break toward the lower index") {
  const auto s = build::scenario({{2e-9}, {2e-9}, {1e-9}}, 4, 1e-13);
  const auto c = cfpon::form_clusters(s, {ClusterMode::kCfTopM, 2}, all_on(3));
  CHECK(c.serving[0] == std::vector<std::size_t>{0, 1});
  const auto s2 = build::scenario({{1e-9}, {3e-9}, {3e-9}}, 4, 1e-13);
  CHECK(cfpon::form_clusters(s2, {ClusterMode::kSmallCell, 1}, all_on(3)).serving[0] ==
        std::vector<std::size_t>{1});
}

TEST_CASE("cluster spec parsing") {
  CHECK(cfpon::parse_cluster_spec("cf_all").mode == ClusterMode::kCfAll);
  CHECK(cfpon::parse_cluster_spec("small_cell").mode == ClusterMode::kSmallCell);
  const auto top = cfpon::parse_cluster_spec("cf_top_m(3)");
  CHECK(top.mode == ClusterMode::kCfTopM);
  CHECK(top.top_m == 3);
  CHECK(cfpon::to_string(top) == "cf_top_m(3)");
  CHECK_THROWS_AS(cfpon::parse_cluster_spec("cf_top_m(0)"), cfpon::ConfigError);
  CHECK_THROWS_AS(cfpon::parse_cluster_spec("cf_top_m(x)"), cfpon::ConfigError);
  CHECK_THROWS_AS(cfpon::parse_cluster_spec("cellular"), cfpon::ConfigError);
  const auto s = build::scenario({{1e-9}}, 4, 1e-13);
  CHECK_THROWS_AS(cfpon::form_clusters(s, {ClusterMode::kCfTopM, 0}, all_on(1)), cfpon::ConfigError);
}

TEST_CASE("single-link SINR hand evaluation") {
  // p * beta = 10 sigma^2, N = 4: 4 * 10 / (10 + 1).
  const double noise = 1e-13;
  const auto s = build::scenario({{1e-11}}, 4, noise);
  const auto c = cfpon::form_clusters(s, {}, all_on(1));
  cfpon::PowerAllocation a;
  a.p = cfpon::Matrix(1, 1, 0.1);
  CHECK(cfpon::sinr(0, a, c, s) == doctest::Approx(40.0 / 11.0).epsilon(1e-12));
  const auto se = cfpon::se_per_ue(a, c, s);
  CHECK(se.se[0] == doctest::Approx(std::log2(1.0 + 40.0 / 11.0)).epsilon(1e-12));
  CHECK(se.se[0] == doctest::Approx(2.2130).epsilon(1e-4));
  a.p(0, 0) = 0.0;
  CHECK(cfpon::sinr(0, a, c, s) == 0.0);
  CHECK(cfpon::se_per_ue(a, c, s).se[0] == 0.0);
}

TEST_CASE("SINR of one gives SE of exactly one") {
  // N p beta / (p beta + sigma^2) = 1 with N = 2, p beta = sigma^2.
  const auto s = build::scenario({{1e-12}}, 2, 1e-13);
  const auto c = cfpon::form_clusters(s, {}, all_on(1));
  cfpon::PowerAllocation a;
  a.p = cfpon::Matrix(1, 1, 0.1);
  CHECK(cfpon::se_per_ue(a, c, s).se[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("min SE of an empty population is zero") {
  cfpon::SEResult r;
  CHECK(r.min_se() == 0.0);
}

TEST_CASE("SINR agrees with the straight-line oracle on random instances") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto rc = random_case(seed);
    for (std::size_t k = 0; k < rc.scenario.num_ues(); ++k) {
      const double lib = cfpon::sinr(k, rc.deployment.alloc, rc.deployment.clusters, rc.scenario);
      const double ref = oracle::sinr(rc.scenario, rc.deployment, k);
      if (ref == 0.0) {
        CHECK(lib == 0.0);
      } else {
        CHECK(std::fabs(lib - ref) / ref <= 1e-12);
      }
    }
  }
}

TEST_CASE("scaling every power up strictly increases SINR") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto rc = random_case(seed);
    const auto before = cfpon::se_per_ue(rc.deployment.alloc, rc.deployment.clusters, rc.scenario);
    auto scaled = rc.deployment.alloc;
    for (std::size_t l = 0; l < scaled.p.rows(); ++l) {
      for (double& v : scaled.p.row(l)) v *= 1.5;
    }
    const auto after = cfpon::se_per_ue(scaled, rc.deployment.clusters, rc.scenario);
    for (std::size_t k = 0; k < before.sinr.size(); ++k) {
      if (before.sinr[k] > 0.0) CHECK(after.sinr[k] > before.sinr[k]);
    }
  }
}

TEST_CASE("an extra RU transmitting only to k never lowers SINR_k") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto rc = random_case(seed);
    auto& d = rc.deployment;
    const std::size_t L = rc.scenario.num_rus();
    for (std::size_t k = 0; k < rc.scenario.num_ues(); ++k) {
      for (std::size_t extra = 0; extra < L; ++extra) {
        auto& S = d.clusters.serving[k];
        if (std::find(S.begin(), S.end(), extra) != S.end()) continue;
        bool silent = true;
        for (double v : d.alloc.p.row(extra)) silent = silent && v == 0.0;
        if (!silent) continue;
        const double before = cfpon::sinr(k, d.alloc, d.clusters, rc.scenario);
        auto d2 = d;
        d2.clusters.serving[k].push_back(extra);
        std::sort(d2.clusters.serving[k].begin(), d2.clusters.serving[k].end());
        d2.alloc.p(extra, k) = 0.2;
        CHECK(cfpon::sinr(k, d2.alloc, d2.clusters, rc.scenario) >= before);
        break;
      }
    }
  }
}

TEST_CASE("allocation shape is proportional to beta and saturates each RU") {
  const auto s = build::scenario({{1e-9, 3e-9}, {5e-9, 0.0 + 1e-9}}, 4, 1e-13);
  const auto c = cfpon::form_clusters(s, {}, all_on(2));
  const auto a = cfpon::scaled_allocation(0.5, 2.0, c, s);
  CHECK(a.p(0, 0) == doctest::Approx(0.5 * 2.0 * 0.25));
  CHECK(a.p(0, 1) == doctest::Approx(0.5 * 2.0 * 0.75));
  CHECK(a.ru_tx_sum(0) == doctest::Approx(1.0));
  CHECK(a.ru_tx_sum(1) == doctest::Approx(1.0));
}

TEST_CASE("power control examples") {
  const double noise = 1e-13;
  const auto s = build::scenario({{1e-12}}, 4, noise);  // per_ru_max * beta = 10 sigma^2
  const auto c = cfpon::form_clusters(s, {}, all_on(1));
  SUBCASE("zero target needs no power") {
    const auto pc = cfpon::power_control(0.0, c, s, all_on(1), 1.0);
    CHECK(pc.feasible);
    CHECK(pc.scale == 0.0);
    CHECK(pc.alloc.ru_tx_sum(0) == 0.0);
  }
  SUBCASE("the full-power SE is the boundary") {
    const double target = std::log2(1.0 + 40.0 / 11.0) - 1e-9;
    const auto pc = cfpon::power_control(target, c, s, all_on(1), 1.0);
    CHECK(pc.feasible);
    CHECK(pc.scale == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(pc.scale <= 1.0);
  }
  SUBCASE("targets above full power are infeasible and report the achievable SE") {
    const auto pc = cfpon::power_control(2.5, c, s, all_on(1), 1.0);
    CHECK_FALSE(pc.feasible);
    CHECK(pc.scale == 1.0);
    CHECK(pc.min_se_at_full_power == doctest::Approx(std::log2(1.0 + 40.0 / 11.0)));
  }
  SUBCASE("negative or non-finite targets are rejected") {
    CHECK_THROWS_AS(cfpon::power_control(-0.1, c, s, all_on(1), 1.0), cfpon::DomainError);
    CHECK_THROWS_AS(cfpon::power_control(std::nan(""), c, s, all_on(1), 1.0), cfpon::DomainError);
  }
}

TEST_CASE("power control matches the closed-form scale of a single link") {
  // SINR(v) = N v A / (v A + sigma^2) is invertible: v = sigma^2 t / (A (N - t)).
  const double noise = 1e-13;
  const double A = 1e-11;
  const auto s = build::scenario({{A}}, 4, noise);
  const auto c = cfpon::form_clusters(s, {}, all_on(1));
  for (double target : {0.3, 0.8, 1.2, 1.7, 2.1}) {
    const double t = std::exp2(target) - 1.0;
    const double exact = noise * t / (A * (4.0 - t));
    const auto pc = cfpon::power_control(target, c, s, all_on(1), 1.0);
    REQUIRE(pc.feasible);
    CHECK(pc.scale >= exact);
    CHECK(pc.scale - exact <= cfpon::kPowerControlTolerance);
  }
}

TEST_CASE("bisection scale is monotone and tight over a target grid") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cfpon::ScenarioConfig cfg;
    cfg.num_rus = 9;
    cfg.num_ues = 5;
    cfg.antennas_per_ru = 32;
    const auto s = cfpon::generate_scenario(cfg, seed);
    const auto c = cfpon::form_clusters(s, {}, all_on(9));
    double previous = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double target = 0.15 * i;
      const auto pc = cfpon::power_control(target, c, s, all_on(9), 1.0);
      CHECK(pc.scale >= previous);
      previous = pc.scale;
      if (!pc.feasible) continue;
      CHECK(cfpon::se_per_ue(pc.alloc, c, s).min_se() >= target - 1e-9);
      const double below = pc.scale - 2 * cfpon::kPowerControlTolerance;
      if (below > 0.0) {
        const auto a = cfpon::scaled_allocation(below, 1.0, c, s);
        CHECK(cfpon::se_per_ue(a, c, s).min_se() < target);
      }
    }
  }
}

TEST_CASE("clusters must stay inside the active set") {
  const auto s = build::scenario({{1e-9}, {1e-9}}, 4, 1e-13);
  const auto c = cfpon::form_clusters(s, {}, all_on(2));
  CHECK_THROWS_AS(cfpon::power_control(1.0, c, s, {true, false}, 1.0), cfpon::StructuralError);
}

TEST_CASE("unserved UEs make positive targets infeasible") {
  const auto s = build::scenario({{1e-9}}, 4, 1e-13);
  const auto c = cfpon::form_clusters(s, {}, {false});
  CHECK_FALSE(cfpon::power_control(0.5, c, s, {false}, 1.0).feasible);
  CHECK(cfpon::power_control(0.0, c, s, {false}, 1.0).feasible);
}
