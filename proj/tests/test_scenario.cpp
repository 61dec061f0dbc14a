#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rishst/geometry.hpp"
#include "rishst/scenario.hpp"

using namespace rishst;

TEST_SUITE("scenario") {

TEST_CASE("defaults reproduce the reference table") {
  const auto c = load_scenario("");
  CHECK(c.rf.carrier_frequency_hz == 2.35e9);
  CHECK(c.rf.bandwidth_hz == 20e6);
  CHECK(c.rf.noise_figure_db == 10.0);
  CHECK(c.geometry.v_mps * 3.6 == doctest::Approx(360.0));
  CHECK(c.geometry.h_bs_m == 10.0);
  CHECK(c.geometry.h_ris_m == 2.0);
  CHECK(c.geometry.h_mr_m == 2.5);
  CHECK(c.geometry.d_bs_v_m == 50.0);
  CHECK(c.geometry.d_ris_v_m == 20.0);
  for (const auto* l : {&c.fading.bm, &c.fading.br, &c.fading.rm}) {
    CHECK(l->k_factor_db == 10.0);
    CHECK(l->los_exponent == 3.0);
    CHECK(l->nlos_exponent == 3.6);
  }
  CHECK(c.rf.coverage_threshold == 0.95);
  CHECK(c == default_scenario());
}

TEST_CASE("noise power") {
  const auto c = default_scenario();
  const double expected = -174.0 + 10.0 * std::log10(2e7) + 10.0;
  CHECK(c.derived.noise_power_dbm == doctest::Approx(expected).epsilon(1e-12));
  CHECK(c.derived.noise_power_dbm == doctest::Approx(-90.99).epsilon(1e-4));
}

TEST_CASE("phase set for two bits") {
  const auto c = load_scenario("quant_bits = 2");
  const auto set = c.phase_set();
  REQUIRE(set.size() == 4);
  const double pi = std::numbers::pi;
  CHECK(set[0] == 0.0);
  CHECK(set[1] == doctest::Approx(pi / 2));
  CHECK(set[2] == doctest::Approx(pi));
  CHECK(set[3] == doctest::Approx(3 * pi / 2));
}

TEST_CASE("K-factor weights") {
  const auto c = load_scenario("", {"k_factor_db=10"});
  CHECK(c.derived.br.los_weight == doctest::Approx(std::sqrt(10.0 / 11.0)));
  CHECK(c.derived.br.los_weight == doctest::Approx(0.95346).epsilon(1e-5));
  CHECK(c.derived.bm.nlos_weight == doctest::Approx(std::sqrt(1.0 / 11.0)));
  const auto los = load_scenario("k_factor_db_bm = inf");
  CHECK(los.derived.bm.los_weight == 1.0);
  CHECK(los.derived.bm.nlos_weight == 0.0);
  CHECK(los.derived.rm.los_weight < 1.0);
}

TEST_CASE("parsing comments, sections and overrides") {
  const auto c = load_scenario(
      "# scenario\n[rf]\ntx_power_dbm = 24   # low power\n\n[ris]\nn_elements=20\n",
      {"n_elements=40"});
  CHECK(c.rf.tx_power_dbm == 24.0);
  CHECK(c.ris.n_elements == 40);
  CHECK(load_scenario("v_kmh = 180").geometry.v_mps == doctest::Approx(50.0));
}

TEST_CASE("serialization round trip and hash") {
  auto c = load_scenario("tx_power_dbm = 27.3\nk_factor_db_rm = 7.25\nseed = 99\nrate_mode = mc_average");
  const auto back = load_scenario(serialize(c));
  CHECK(back == c);
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  CHECK(config_hash(c) != config_hash(default_scenario()));
}

TEST_CASE("errors name the offending key and line") {
  try {
    load_scenario("tx_power_dbm = 30\nbogus_key = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "bogus_key");
    CHECK(e.line() == 2);
  }
  try {
    load_scenario("n_elements = 1.5");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "n_elements");
    CHECK(e.line() == 1);
  }
  CHECK_THROWS_AS(load_scenario("coverage_threshold = 1.2"), ConfigError);
  CHECK_THROWS_AS(load_scenario("quant_bits = 0"), ConfigError);
  CHECK_THROWS_AS(load_scenario("n_elements = -1"), ConfigError);
  CHECK_THROWS_AS(load_scenario("bandwidth_hz = 0"), ConfigError);
  CHECK_THROWS_AS(load_scenario("", {"no_equals_sign"}), ConfigError);
  CHECK_THROWS_AS(load_scenario("mc_trials = 10"), ConfigError);
  // An unreadable file is an I/O failure, not a configuration error.
  try {
    load_scenario_file("/nonexistent/path.cfg");
    FAIL("expected an exception");
  } catch (const ConfigError&) {
    FAIL("missing file reported as ConfigError");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/path.cfg") != std::string::npos);
  }
}

TEST_CASE("placement grid") {
  const auto c = default_scenario();
  const auto grid = c.placement_grid();
  REQUIRE(grid.size() == 41);
  CHECK(grid.front() == -1000.0);
  CHECK(grid.back() == 1000.0);
  CHECK(grid[20] == 0.0);
}

}

TEST_SUITE("geometry") {

TEST_CASE("closest approach distances") {
  const auto c = default_scenario();
  const auto g = geometry_at_offset(c, 0.0, 0.0);
  CHECK(g.d_bm_m == doctest::Approx(std::sqrt(50.0 * 50.0 + 7.5 * 7.5)));
  CHECK(g.d_bm_m == doctest::Approx(50.5594).epsilon(1e-6));
  CHECK(g.d_br_m == doctest::Approx(std::sqrt(8.0 * 8.0 + 30.0 * 30.0)));
  CHECK(g.d_br_m == doctest::Approx(31.0483).epsilon(1e-5));
  CHECK(g.d_rm_m == doctest::Approx(std::sqrt(20.0 * 20.0 + 0.5 * 0.5)));
  CHECK(g.d_rm_m == doctest::Approx(20.0062).epsilon(1e-5));
}

TEST_CASE("train offset follows the slot") {
  const auto c = default_scenario();
  CHECK(train_offset(c, 1) == doctest::Approx(7000.0 - 1.0));
  CHECK(train_offset(c, 7000) == doctest::Approx(0.0));
  CHECK(train_offset(c, 14000) == doctest::Approx(-7000.0));
  const auto g = slot_geometry(c, 7000, 0.0);
  CHECK(g.t == 7000);
  CHECK(g.d_bm_m == doctest::Approx(50.5594).epsilon(1e-6));
}

TEST_CASE("mirror symmetry about the BS") {
  const auto c = default_scenario();
  for (double x : {1.0, 37.5, 250.0, 4000.0}) {
    for (double d : {0.0, 120.0}) {
      const auto a = geometry_at_offset(c, x, d);
      const auto b = geometry_at_offset(c, -x, -d);
      CHECK(a.d_bm_m == doctest::Approx(b.d_bm_m));
      CHECK(a.d_br_m == doctest::Approx(b.d_br_m));
      CHECK(a.d_rm_m == doctest::Approx(b.d_rm_m));
    }
  }
}

}
