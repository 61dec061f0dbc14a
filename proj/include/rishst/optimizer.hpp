// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "rishst/analytics.hpp"

namespace rishst {

enum class Scheme { ideal_phase, optimized_discrete, random_phase, without_ris };

std::string_view to_string(Scheme scheme);
/// Accepts the names produced by to_string; throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view name);

class SchemeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Copy of `cfg` with N forced to 0 for the without-RIS scheme; unchanged otherwise.
ScenarioConfig scheme_config(const ScenarioConfig& cfg, Scheme scheme);

struct SlotRecord {
  std::int64_t t = 0;
  double coverage = 0.0;
  bool beta = false;  // coverage >= P_th
  double rate = 0.0;
  PhaseVector phases;
  double d_ris_l = 0.0;
};

struct PlacementPoint {
  double d_ris_l = 0.0;
  double travel_distance_m = 0.0;
};

struct SweepResult {
  std::vector<SlotRecord> records;
  double travel_distance_m = 0.0;  // sum of beta(t) v tau
  double d_ris_l_star = 0.0;
  double d_max_m = 0.0;
  std::vector<PlacementPoint> placements;  // filled by placement_search
};

/// Continuous phases that rotate every cascade term onto the direct LoS term.
/// Throws SchemeError when N = 0.
PhaseVector ideal_phases(const ScenarioConfig& cfg, const SlotGeometry& geom);

/// Uniform random discrete vector used to initialize the local search at slot t.
PhaseVector random_discrete_phases(const ScenarioConfig& cfg, std::uint64_t seed, std::int64_t t);

/// Coverage after each single-element update, for auditing the search.
struct LocalSearchTrace {
  double initial_coverage = 0.0;
  std::vector<double> coverage_after_update;
};

/// Element-by-element search over the discrete phase set. For each element
/// every level is tried with the others held fixed and the best one is
/// committed before moving on. Levels are ranked by coverage; since coverage
/// at a fixed slot is strictly increasing in |mu_h|^2, the ranking uses
/// |mu_h|^2 directly, which also orders levels whose coverage saturates at
/// 0 or 1. Exact ties go to the lowest level index.
/// `passes` sweeps are made; 0 means sweep until a pass changes nothing.
PhaseVector local_search_phases(const ScenarioConfig& cfg, const SlotGeometry& geom,
                                const PhaseVector& init, int passes,
                                LocalSearchTrace* trace = nullptr);

/// Per-episode random state: the frozen random-phase vector and, for
/// warm starts, the previous slot's solution.
struct EpisodeState {
  std::uint64_t seed = 0;
  PhaseVector frozen_random;
  std::optional<PhaseVector> previous;
};

EpisodeState make_episode_state(const ScenarioConfig& cfg, std::uint64_t seed);

/// Phases chosen by `scheme` at this slot. `cfg` must already be the
/// scheme's configuration (see scheme_config).
PhaseVector scheme_phases(const ScenarioConfig& cfg, const SlotGeometry& geom, Scheme scheme,
                          EpisodeState& state);

struct EpisodeOptions {
  bool keep_records = true;
  int threads = 1;
};

/// Runs slots 1..T at a fixed placement.
SweepResult episode(const ScenarioConfig& cfg, double d_ris_l, Scheme scheme, std::uint64_t seed,
                    const EpisodeOptions& options = {});

/// Runs an episode at every candidate placement and keeps the one with the
/// largest travel distance (ties: closest to 0, then the smaller value).
/// Throws ConfigError for an empty grid.
SweepResult placement_search(const ScenarioConfig& cfg, Scheme scheme, std::uint64_t seed,
                             int threads = 1);
SweepResult placement_search(const ScenarioConfig& cfg, const std::vector<double>& grid,
                             Scheme scheme, std::uint64_t seed, int threads = 1);

}  // namespace rishst
