#include <cmath>

#include "doctest.h"
#include "rishst/analytics.hpp"
#include "rishst/montecarlo.hpp"
#include "rishst/optimizer.hpp"

using namespace rishst;

TEST_SUITE("montecarlo") {

TEST_CASE("estimates do not depend on the worker count") {
  const auto c = default_scenario();
  const auto g = slot_geometry(c, 1250, 0.0);
  const auto phases = random_discrete_phases(c, 2, 1250);
  const auto a = estimate_coverage(c, g, phases, 20000, 5, 1);
  const auto b = estimate_coverage(c, g, phases, 20000, 5, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const auto ra = estimate_rate(c, g, phases, 5000, 5, 1);
  const auto rb = estimate_rate(c, g, phases, 5000, 5, 3);
  CHECK(ra.mean == rb.mean);
  CHECK(ra.std_error == rb.std_error);
  CHECK(a.trials == 20000);
  CHECK(a.seed == 5);
}

TEST_CASE("trivial limits") {
  const auto g = slot_geometry(default_scenario(), 7000, 0.0);
  const auto easy = load_scenario("snr_threshold_db = -300");
  const auto phases = random_discrete_phases(easy, 1, 7000);
  const auto e = estimate_coverage(easy, g, phases, 1000, 1);
  CHECK(e.mean == 1.0);
  CHECK(e.std_error == 0.0);

  const auto los = load_scenario("k_factor_db = inf\nn_elements = 0");
  const auto near = estimate_coverage(los, g, PhaseVector::empty(), 500, 1);
  const auto far = estimate_coverage(los, slot_geometry(los, 1, 0.0), PhaseVector::empty(), 500, 1);
  CHECK(near.mean == 1.0);
  CHECK(far.mean == 0.0);
  const auto rate = estimate_rate(los, g, PhaseVector::empty(), 500, 1);
  CHECK(rate.std_error == 0.0);

  const auto quiet = load_scenario("tx_power_dbm = -300");
  CHECK(estimate_rate(quiet, g, phases, 500, 1).mean == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("too few trials are rejected") {
  const auto c = default_scenario();
  const auto g = slot_geometry(c, 7000, 0.0);
  const auto phases = random_discrete_phases(c, 1, 7000);
  CHECK_THROWS_AS(estimate_coverage(c, g, phases, 99, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_rate(c, g, phases, 10, 1), std::invalid_argument);
}

TEST_CASE("closest approach agrees with the closed form") {
  const auto c = default_scenario();
  const auto g = slot_geometry(c, 7000, 0.0);
  EpisodeState st = make_episode_state(c, 1);
  const auto phases = scheme_phases(c, g, Scheme::optimized_discrete, st);
  const auto mc = estimate_coverage(c, g, phases, 100000, 9);
  CHECK(std::abs(mc.mean - coverage_probability(c, g, phases)) <= 0.01);
}

TEST_CASE("rate estimates at two sample sizes agree") {
  const auto c = default_scenario();
  const auto g = slot_geometry(c, 6000, 0.0);
  const auto phases = random_discrete_phases(c, 1, 6000);
  const auto a = estimate_rate(c, g, phases, 10000, 1);
  const auto b = estimate_rate(c, g, phases, 100000, 2);
  CHECK(std::abs(a.mean - b.mean) <= 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("audit of 50 transition and plateau slots") {
  const auto c = default_scenario();
  int outside = 0;
  for (int i = 0; i < 50; ++i) {
    const std::int64_t t = 1000 + 40 * i;
    const auto g = slot_geometry(c, t, 0.0);
    const auto phases = random_discrete_phases(c, 3, t);
    const double p = coverage_probability(c, g, phases);
    const auto mc = estimate_coverage(c, g, phases, 20000, 13);
    const double tol = 4.0 * std::max(mc.std_error, std::sqrt(p * (1 - p) / 20000.0)) + 1.0 / 20000.0;
    if (std::abs(mc.mean - p) > tol) ++outside;
  }
  CHECK(outside == 0);
}

}

TEST_SUITE("montecarlo") {

TEST_CASE("estimates are identical under every kernel variant") {
  using namespace rishst::kernels;
  if (avx2_table() == nullptr) {
    MESSAGE("only the scalar variant is available");
    return;
  }
  const bool was_avx2 = active().name == "avx2";
  const auto c = default_scenario();
  const auto g = slot_geometry(c, 1150, 0.0);
  const auto phases = random_discrete_phases(c, 4, 1150);
  REQUIRE(select(Isa::scalar));
  const auto cs = estimate_coverage(c, g, phases, 30000, 8);
  const auto rs = estimate_rate(c, g, phases, 30000, 8);
  const auto ls = local_search_phases(c, g, phases, 1);
  REQUIRE(select(Isa::avx2));
  const auto cv = estimate_coverage(c, g, phases, 30000, 8);
  const auto rv = estimate_rate(c, g, phases, 30000, 8);
  const auto lv = local_search_phases(c, g, phases, 1);
  select(was_avx2 ? Isa::avx2 : Isa::scalar);
  CHECK(cs.mean == cv.mean);
  CHECK(rs.mean == rv.mean);
  CHECK(rs.std_error == rv.std_error);
  CHECK(ls == lv);
}

}
