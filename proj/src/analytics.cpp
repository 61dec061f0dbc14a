// SPDX-License-Identifier: Apache-2.0
#include "rishst/analytics.hpp"

#include <cmath>
#include <limits>

#include "rishst/montecarlo.hpp"
#include "rishst/specfun.hpp"

namespace rishst {

cplx channel_mean(const ScenarioConfig& cfg, const SlotGeometry& geom, const PhaseVector& phases) {
  check_phase_length(cfg, phases);
  const auto los = los_components(cfg, geom);
  cplx mean = los.los_bm;
  for (std::size_t n = 0; n < los.los_cascade.size(); ++n) {
    mean += los.los_cascade[n] * std::polar(1.0, phases.radians(n));
  }
  return mean;
}

double channel_variance(const ScenarioConfig& cfg, const SlotGeometry& geom) {
  const auto c = slot_channel(cfg, geom);
  // Per element: LoS-NLoS, NLoS-LoS and NLoS-NLoS products are zero-mean and
  // mutually uncorrelated, so their powers add.
  const double rm_nlos2 = c.rm_nlos * c.rm_nlos;
  const double br_nlos2 = c.br_nlos * c.br_nlos;
  const double cascade =
      std::norm(c.rm_los) * br_nlos2 + rm_nlos2 * std::norm(c.br_los) + rm_nlos2 * br_nlos2;
  return c.direct_nlos * c.direct_nlos + static_cast<double>(c.elements) * cascade;
}

ChannelMoments channel_moments(const ScenarioConfig& cfg, const SlotGeometry& geom,
                               const PhaseVector& phases) {
  return {channel_mean(cfg, geom, phases), channel_variance(cfg, geom)};
}

CoverageInputs coverage_inputs(const ScenarioConfig& cfg, const ChannelMoments& m) {
  CoverageInputs in;
  in.mean_snr = cfg.derived.mean_snr;
  const double mean_power = std::norm(m.mean);
  if (m.variance > 0.0) {
    in.noncentrality = mean_power / m.variance;
    in.threshold_arg = cfg.derived.snr_threshold / (in.mean_snr * m.variance);
  } else {
    in.noncentrality = mean_power > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    in.threshold_arg = std::numeric_limits<double>::infinity();
  }
  return in;
}

double coverage_from_moments(const ScenarioConfig& cfg, const ChannelMoments& m) {
  const double gamma_th = cfg.derived.snr_threshold;
  const double mean_snr = cfg.derived.mean_snr;
  if (m.variance <= 0.0) {
    return mean_snr * std::norm(m.mean) >= gamma_th ? 1.0 : 0.0;
  }
  const auto in = coverage_inputs(cfg, m);
  if (std::isinf(in.threshold_arg)) return 0.0;
  if (std::isinf(in.noncentrality)) return 1.0;
  return marcum_q1(std::sqrt(2.0 * in.noncentrality), std::sqrt(2.0 * in.threshold_arg));
}

double coverage_probability(const ScenarioConfig& cfg, const SlotGeometry& geom,
                            const PhaseVector& phases) {
  return coverage_from_moments(cfg, channel_moments(cfg, geom, phases));
}

double rate_of_snr(const ScenarioConfig& cfg, double snr) {
  const double b = cfg.rf.bandwidth_hz;
  return cfg.run.rate_log10 ? b * std::log10(1.0 + snr) : b * std::log2(1.0 + snr);
}

double transmission_rate(const ScenarioConfig& cfg, const SlotGeometry& geom,
                         const PhaseVector& phases, const RateRequest& request) {
  const double snr_scale = cfg.derived.mean_snr;
  switch (request.mode) {
    case RateMode::instantaneous: {
      const auto draw = draw_channel(cfg, geom, phases, {request.seed, request.trial});
      return rate_of_snr(cfg, snr_scale * std::norm(draw.h));
    }
    case RateMode::mc_average:
      return estimate_rate(cfg, geom, phases, request.trials, request.seed).mean;
    case RateMode::mean_channel:
      break;
  }
  const auto m = channel_moments(cfg, geom, phases);
  return rate_of_snr(cfg, snr_scale * (std::norm(m.mean) + m.variance));
}

}  // namespace rishst
