#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rishst/analytics.hpp"
#include "rishst/optimizer.hpp"

using namespace rishst;

namespace {

ScenarioConfig with(std::vector<std::string> sets) { return load_scenario("", sets); }

SlotGeometry closest(const ScenarioConfig& c) { return geometry_at_offset(c, 0.0, 0.0, 7000); }

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("path loss") {
  CHECK(path_loss(1.0, 3.0) == 1.0);
  CHECK(path_loss(10.0, 3.0) == doctest::Approx(1e-3));
  CHECK(path_loss(50.5594, 3.0) == doctest::Approx(7.733e-6).epsilon(1e-4));
  CHECK_THROWS_AS(path_loss(0.0, 3.0), DomainError);
  CHECK_THROWS_AS(path_loss(-2.0, 3.0), DomainError);
}

TEST_CASE("phase of distance") {
  const double lambda = kSpeedOfLight / 2.35e9;
  CHECK(lambda == doctest::Approx(0.12757).epsilon(1e-4));
  CHECK(phase_of_distance(lambda, lambda) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(phase_of_distance(lambda / 2, lambda) == doctest::Approx(std::numbers::pi));
  const double d = 50.5594;
  const double expected = std::fmod(2.0 * std::numbers::pi * d / lambda, 2.0 * std::numbers::pi);
  CHECK(phase_of_distance(d, lambda) == doctest::Approx(expected).epsilon(1e-9));
  for (double x : {0.3, 17.0, 5000.123}) {
    const double p = phase_of_distance(x, lambda);
    CHECK(p >= 0.0);
    CHECK(p < 2.0 * std::numbers::pi);
  }
}

TEST_CASE("line-of-sight components") {
  const auto c = default_scenario();
  const auto los = los_components(c, closest(c));
  CHECK(los.los_cascade.size() == 60);
  CHECK(std::abs(los.los_bm) == doctest::Approx(std::sqrt(10.0 / 11.0) * std::sqrt(path_loss(50.5594, 3.0))).epsilon(1e-5));

  const auto none = los_components(with({"n_elements=0"}), closest(c));
  CHECK(none.los_cascade.empty());

  const auto pure = with({"k_factor_db=inf"});
  const auto g = closest(pure);
  CHECK(std::norm(los_components(pure, g).los_bm) == doctest::Approx(path_loss(g.d_bm_m, 3.0)));
}

TEST_CASE("pure line of sight gives deterministic coherent sums") {
  const auto c = with({"k_factor_db=inf", "n_elements=8"});
  const auto g = slot_geometry(c, 6900, 0.0);
  const auto phases = ideal_phases(c, g);
  const auto los = los_components(c, g);
  double coherent = std::abs(los.los_bm);
  for (const auto& t : los.los_cascade) coherent += std::abs(t);
  for (std::uint64_t trial : {0u, 1u, 99u}) {
    const auto r = draw_channel(c, g, phases, {5, trial});
    CHECK(std::abs(r.h) == doctest::Approx(coherent).epsilon(1e-12));
  }
  const auto bare = with({"k_factor_db_bm=inf", "n_elements=0"});
  const auto r = draw_channel(bare, g, PhaseVector::empty(), {5, 3});
  CHECK(r.h == los_components(bare, g).los_bm);
}

TEST_CASE("six-way breakdown sums to the realization") {
  const auto c = with({"n_elements=12"});
  const auto g = slot_geometry(c, 6800, 0.0);
  const auto phases = random_discrete_phases(c, 3, g.t);
  const auto r = draw_channel(c, g, phases, {11, 42}, true);
  REQUIRE(r.components.has_value());
  cplx sum{};
  for (const auto& p : *r.components) sum += p;
  CHECK(std::abs(sum - r.h) <= 1e-12 * std::abs(r.h));
  CHECK((*r.components)[0] == los_components(c, g).los_bm);
}

TEST_CASE("draws are reproducible and keyed") {
  const auto c = default_scenario();
  const auto g = slot_geometry(c, 6950, 0.0);
  const auto phases = random_discrete_phases(c, 1, g.t);
  const auto a = draw_channel(c, g, phases, {9, 17});
  const auto b = draw_channel(c, g, phases, {9, 17});
  CHECK(a.h == b.h);
  CHECK(draw_channel(c, g, phases, {9, 18}).h != a.h);
  CHECK(draw_channel(c, g, phases, {10, 17}).h != a.h);
  const auto g2 = slot_geometry(c, 6951, 0.0);
  CHECK(draw_channel(c, g2, phases, {9, 17}).h != a.h);
}

TEST_CASE("phase length is checked") {
  const auto c = default_scenario();
  const auto g = closest(c);
  CHECK_THROWS_AS(draw_channel(c, g, PhaseVector::continuous({0.0, 1.0}), {1, 0}), std::invalid_argument);
}

TEST_CASE("sample moments of 10^6 draws match the closed form") {
  const auto c = default_scenario();
  const auto g = closest(c);
  const auto phases = random_discrete_phases(c, 4, g.t);
  const auto m = channel_moments(c, g, phases);
  const int n = 1'000'000;
  cplx sum{};
  std::vector<cplx> h(n);
  for (int i = 0; i < n; ++i) {
    h[static_cast<std::size_t>(i)] = draw_channel(c, g, phases, {21, static_cast<std::uint64_t>(i)}).h;
    sum += h[static_cast<std::size_t>(i)];
  }
  const cplx mean = sum / double(n);
  double var = 0.0;
  for (const auto& x : h) var += std::norm(x - mean);
  var /= double(n - 1);
  const double tol = 4.0 * std::sqrt(m.variance / 2.0) / std::sqrt(double(n));
  CHECK(std::abs(mean.real() - m.mean.real()) <= tol);
  CHECK(std::abs(mean.imag() - m.mean.imag()) <= tol);
  CHECK(std::abs(var / m.variance - 1.0) <= 0.01);
}

}
