// SPDX-License-Identifier: Apache-2.0
#include "rishst/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rishst/analytics.hpp"
#include "rishst/kernels.hpp"
#include "rishst/parallel.hpp"

namespace rishst {
namespace {

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * (o.n / total);
    m2 += o.m2 + delta * delta * (n * o.n / total);
    n = total;
  }
};

void check_trials(std::int64_t trials) {
  if (trials < 100) throw std::invalid_argument("Monte Carlo estimates need at least 100 trials");
}

template <class BlockFn>
void for_each_block(std::int64_t trials, int threads, BlockFn&& fn) {
  const auto total = static_cast<std::size_t>(trials);
  const std::size_t blocks = (total + kMcBlockTrials - 1) / kMcBlockTrials;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t first = b * kMcBlockTrials;
    const std::size_t count = std::min(kMcBlockTrials, total - first);
    fn(b, first, count);
  });
}

}  // namespace

McEstimate estimate_coverage(const ScenarioConfig& cfg, const SlotGeometry& geom,
                             const PhaseVector& phases, std::int64_t trials, std::uint64_t seed,
                             int threads) {
  check_trials(trials);
  check_phase_length(cfg, phases);
  const auto terms = channel_terms(slot_channel(cfg, geom), phases);
  // P |h|^2 / sigma^2 >= gamma_th  <=>  |h|^2 >= gamma_th / mean_snr
  const double threshold = cfg.derived.snr_threshold / cfg.derived.mean_snr;
  const auto& k = kernels::active();

  const std::size_t blocks = (static_cast<std::size_t>(trials) + kMcBlockTrials - 1) / kMcBlockTrials;
  std::vector<std::size_t> hits(blocks, 0);
  for_each_block(trials, threads, [&](std::size_t b, std::size_t first, std::size_t count) {
    kernels::GaussianBlock draws;
    fill_gaussians(draws, seed, static_cast<std::uint64_t>(geom.t), first, count, terms.elements());
    std::vector<double> h_re(count), h_im(count);
    k.synthesize(terms, draws, h_re.data(), h_im.data());
    hits[b] = k.count_at_least(h_re.data(), h_im.data(), count, threshold);
  });

  std::size_t total_hits = 0;
  for (const auto h : hits) total_hits += h;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(total_hits) / n;
  McEstimate out;
  out.mean = p;
  out.std_error = std::sqrt(p * (1.0 - p) / (n - 1.0));
  out.trials = trials;
  out.seed = seed;
  return out;
}

McEstimate estimate_rate(const ScenarioConfig& cfg, const SlotGeometry& geom,
                         const PhaseVector& phases, std::int64_t trials, std::uint64_t seed,
                         int threads) {
  check_trials(trials);
  check_phase_length(cfg, phases);
  const auto terms = channel_terms(slot_channel(cfg, geom), phases);
  const double snr_scale = cfg.derived.mean_snr;
  const auto& k = kernels::active();

  const std::size_t blocks = (static_cast<std::size_t>(trials) + kMcBlockTrials - 1) / kMcBlockTrials;
  std::vector<Moments> partial(blocks);
  for_each_block(trials, threads, [&](std::size_t b, std::size_t first, std::size_t count) {
    kernels::GaussianBlock draws;
    fill_gaussians(draws, seed, static_cast<std::uint64_t>(geom.t), first, count, terms.elements());
    std::vector<double> h_re(count), h_im(count), power(count);
    k.synthesize(terms, draws, h_re.data(), h_im.data());
    k.power(h_re.data(), h_im.data(), power.data(), count);
    Moments m;
    for (const double p : power) m.add(rate_of_snr(cfg, snr_scale * p));
    partial[b] = m;
  });

  Moments all;
  for (const auto& m : partial) all.merge(m);
  McEstimate out;
  out.mean = all.mean;
  out.std_error = std::sqrt(std::max(0.0, all.m2 / (all.n - 1.0)) / all.n);
  out.trials = trials;
  out.seed = seed;
  return out;
}

}  // namespace rishst
