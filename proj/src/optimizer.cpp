// SPDX-License-Identifier: Apache-2.0
#include "rishst/optimizer.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "rishst/kernels.hpp"
#include "rishst/parallel.hpp"
#include "rishst/rng.hpp"

namespace rishst {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::ideal_phase: return "ideal_phase";
    case Scheme::optimized_discrete: return "optimized_discrete";
    case Scheme::random_phase: return "random_phase";
    case Scheme::without_ris: return "without_ris";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (const auto s : {Scheme::ideal_phase, Scheme::optimized_discrete, Scheme::random_phase,
                       Scheme::without_ris}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

ScenarioConfig scheme_config(const ScenarioConfig& cfg, Scheme scheme) {
  ScenarioConfig out = cfg;
  if (scheme == Scheme::without_ris) {
    out.ris.n_elements = 0;
    out.finalize();
  }
  return out;
}

PhaseVector ideal_phases(const ScenarioConfig& cfg, const SlotGeometry& geom) {
  if (cfg.ris.n_elements < 1) throw SchemeError("ideal phases need at least one RIS element");
  const auto los = los_components(cfg, geom);
  const double target = std::arg(los.los_bm);
  std::vector<double> phases(los.los_cascade.size());
  for (std::size_t n = 0; n < phases.size(); ++n) phases[n] = target - std::arg(los.los_cascade[n]);
  return PhaseVector::continuous(std::move(phases));
}

PhaseVector random_discrete_phases(const ScenarioConfig& cfg, std::uint64_t seed, std::int64_t t) {
  CounterStream stream(seed, StreamPurpose::phase_init, static_cast<std::uint64_t>(t));
  const auto m = static_cast<std::uint64_t>(cfg.derived.phase_levels);
  std::vector<int> levels(static_cast<std::size_t>(cfg.ris.n_elements));
  for (auto& l : levels) l = static_cast<int>(stream.below(m));
  return PhaseVector::discrete(cfg.ris.quant_bits, std::move(levels));
}

PhaseVector local_search_phases(const ScenarioConfig& cfg, const SlotGeometry& geom,
                                const PhaseVector& init, int passes, LocalSearchTrace* trace) {
  check_phase_length(cfg, init);
  if (!init.is_discrete() || init.bits() != cfg.ris.quant_bits) {
    throw std::invalid_argument("local search needs a discrete initial vector with b = " +
                                std::to_string(cfg.ris.quant_bits));
  }
  const int m = cfg.derived.phase_levels;
  const double step = cfg.derived.phase_step;
  std::vector<double> cos_l(static_cast<std::size_t>(m)), sin_l(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) {
    cos_l[static_cast<std::size_t>(l)] = std::cos(step * l);
    sin_l[static_cast<std::size_t>(l)] = std::sin(step * l);
  }
  auto rotor = [&](int l) {
    return cplx(cos_l[static_cast<std::size_t>(l)], sin_l[static_cast<std::size_t>(l)]);
  };

  const auto los = los_components(cfg, geom);
  const double variance = channel_variance(cfg, geom);
  std::vector<int> levels = init.levels();

  cplx sum = los.los_bm;
  for (std::size_t n = 0; n < levels.size(); ++n) sum += los.los_cascade[n] * rotor(levels[n]);

  if (trace) {
    trace->initial_coverage = coverage_from_moments(cfg, {sum, variance});
    trace->coverage_after_update.clear();
  }

  const auto& k = kernels::active();
  std::vector<double> gains(static_cast<std::size_t>(m));
  constexpr int kMaxPasses = 1000;
  const int limit = passes > 0 ? passes : kMaxPasses;
  for (int pass = 0; pass < limit; ++pass) {
    bool changed = false;
    for (std::size_t n = 0; n < levels.size(); ++n) {
      const cplx coeff = los.los_cascade[n];
      const cplx base = sum - coeff * rotor(levels[n]);
      k.level_gains(base.real(), base.imag(), coeff.real(), coeff.imag(), cos_l.data(),
                    sin_l.data(), gains.data(), gains.size());
      int best = 0;
      for (int l = 1; l < m; ++l) {
        if (gains[static_cast<std::size_t>(l)] > gains[static_cast<std::size_t>(best)]) best = l;
      }
      if (best != levels[n]) {
        levels[n] = best;
        changed = true;
      }
      sum = base + coeff * rotor(best);
      if (trace) {
        const double cov = coverage_from_moments(cfg, {sum, variance});
        const double prev = trace->coverage_after_update.empty() ? trace->initial_coverage
                                                                 : trace->coverage_after_update.back();
        assert(cov >= prev - 1e-12);
        (void)prev;
        trace->coverage_after_update.push_back(cov);
      }
    }
    if (passes == 0 && !changed) break;
  }
  return PhaseVector::discrete(cfg.ris.quant_bits, std::move(levels));
}

EpisodeState make_episode_state(const ScenarioConfig& cfg, std::uint64_t seed) {
  EpisodeState state;
  state.seed = seed;
  CounterStream stream(seed, StreamPurpose::random_phase, 0);
  std::vector<double> phases(static_cast<std::size_t>(cfg.ris.n_elements));
  for (auto& p : phases) p = 2.0 * std::numbers::pi * stream.uniform();
  state.frozen_random = PhaseVector::continuous(std::move(phases));
  return state;
}

PhaseVector scheme_phases(const ScenarioConfig& cfg, const SlotGeometry& geom, Scheme scheme,
                          EpisodeState& state) {
  switch (scheme) {
    case Scheme::ideal_phase:
      return ideal_phases(cfg, geom);
    case Scheme::optimized_discrete: {
      const bool warm = cfg.run.warm_start && state.previous.has_value() &&
                        state.previous->size() == static_cast<std::size_t>(cfg.ris.n_elements);
      const PhaseVector init = warm ? *state.previous : random_discrete_phases(cfg, state.seed, geom.t);
      PhaseVector out = local_search_phases(cfg, geom, init, cfg.run.search_passes);
      if (cfg.run.warm_start) state.previous = out;
      return out;
    }
    case Scheme::random_phase:
      if (state.frozen_random.size() != static_cast<std::size_t>(cfg.ris.n_elements)) {
        throw SchemeError("episode state was built for a different N");
      }
      return state.frozen_random;
    case Scheme::without_ris:
      if (cfg.ris.n_elements != 0) {
        throw SchemeError("without_ris needs N = 0; build the configuration with scheme_config");
      }
      return PhaseVector::empty();
  }
  throw SchemeError("unknown scheme");
}

namespace {

SlotRecord evaluate_slot(const ScenarioConfig& cfg, std::int64_t t, double d_ris_l, Scheme scheme,
                         EpisodeState& state) {
  const auto geom = slot_geometry(cfg, t, d_ris_l);
  SlotRecord r;
  r.t = t;
  r.d_ris_l = d_ris_l;
  r.phases = scheme_phases(cfg, geom, scheme, state);
  r.coverage = coverage_probability(cfg, geom, r.phases);
  r.beta = r.coverage >= cfg.rf.coverage_threshold;
  RateRequest rate;
  rate.mode = cfg.run.rate_mode;
  rate.seed = state.seed;
  rate.trials = cfg.run.rate_trials;
  r.rate = transmission_rate(cfg, geom, r.phases, rate);
  return r;
}

constexpr std::size_t kSlotsPerTask = 512;

}  // namespace

SweepResult episode(const ScenarioConfig& cfg, double d_ris_l, Scheme scheme, std::uint64_t seed,
                    const EpisodeOptions& options) {
  const ScenarioConfig run_cfg = scheme_config(cfg, scheme);
  const EpisodeState initial = make_episode_state(run_cfg, seed);
  const auto slots = static_cast<std::size_t>(run_cfg.geometry.total_slots);

  std::vector<SlotRecord> records(slots);
  const bool sequential = run_cfg.run.warm_start && scheme == Scheme::optimized_discrete;
  if (sequential) {
    EpisodeState state = initial;
    for (std::size_t i = 0; i < slots; ++i) {
      records[i] = evaluate_slot(run_cfg, static_cast<std::int64_t>(i + 1), d_ris_l, scheme, state);
    }
  } else {
    const std::size_t tasks = (slots + kSlotsPerTask - 1) / kSlotsPerTask;
    parallel_for(tasks, options.threads, [&](std::size_t task) {
      EpisodeState state = initial;
      const std::size_t end = std::min(slots, (task + 1) * kSlotsPerTask);
      for (std::size_t i = task * kSlotsPerTask; i < end; ++i) {
        records[i] = evaluate_slot(run_cfg, static_cast<std::int64_t>(i + 1), d_ris_l, scheme, state);
      }
    });
  }

  std::int64_t covered = 0;
  for (const auto& r : records) covered += r.beta ? 1 : 0;

  SweepResult out;
  out.travel_distance_m = static_cast<double>(covered) * run_cfg.derived.slot_travel_m;
  out.d_ris_l_star = d_ris_l;
  out.d_max_m = out.travel_distance_m;
  if (options.keep_records) out.records = std::move(records);
  return out;
}

SweepResult placement_search(const ScenarioConfig& cfg, Scheme scheme, std::uint64_t seed, int threads) {
  return placement_search(cfg, cfg.placement_grid(), scheme, seed, threads);
}

SweepResult placement_search(const ScenarioConfig& cfg, const std::vector<double>& grid,
                             Scheme scheme, std::uint64_t seed, int threads) {
  if (grid.empty()) throw ConfigError("placement_min_m", 0, "placement grid is empty");

  std::vector<PlacementPoint> points(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    EpisodeOptions opts;
    opts.keep_records = false;
    const auto r = episode(cfg, grid[i], scheme, seed, opts);
    points[i] = {grid[i], r.travel_distance_m};
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const auto& cand = points[i];
    const auto& cur = points[best];
    if (cand.travel_distance_m != cur.travel_distance_m) {
      if (cand.travel_distance_m > cur.travel_distance_m) best = i;
      continue;
    }
    const double ac = std::abs(cand.d_ris_l), ab = std::abs(cur.d_ris_l);
    if (ac < ab || (ac == ab && cand.d_ris_l < cur.d_ris_l)) best = i;
  }

  EpisodeOptions opts;
  opts.threads = threads;
  SweepResult out = episode(cfg, points[best].d_ris_l, scheme, seed, opts);
  out.d_ris_l_star = points[best].d_ris_l;
  out.d_max_m = out.travel_distance_m;
  out.placements = std::move(points);
  return out;
}

}  // namespace rishst
