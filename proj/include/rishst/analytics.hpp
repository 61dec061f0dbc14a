// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>

#include "rishst/channel.hpp"

namespace rishst {

/// The equivalent channel is CN(mean, variance) at every slot.
struct ChannelMoments {
  cplx mean;
  double variance = 0.0;
};

/// zeta = |mu|^2 / sigma_h^2, gamma0 = gamma_th / (mean_snr sigma_h^2).
struct CoverageInputs {
  double noncentrality = 0.0;
  double threshold_arg = 0.0;
  double mean_snr = 0.0;
};

cplx channel_mean(const ScenarioConfig& cfg, const SlotGeometry& geom, const PhaseVector& phases);
/// Exact variance of h: direct NLoS power plus, per element, the LoS-NLoS,
/// NLoS-LoS and NLoS-NLoS cascade powers.
double channel_variance(const ScenarioConfig& cfg, const SlotGeometry& geom);
ChannelMoments channel_moments(const ScenarioConfig& cfg, const SlotGeometry& geom,
                               const PhaseVector& phases);

CoverageInputs coverage_inputs(const ScenarioConfig& cfg, const ChannelMoments& moments);

/// Pr(P |h|^2 / sigma^2 >= gamma_th). |h|^2 / (sigma_h^2 / 2) is non-central
/// chi-square with two degrees of freedom and noncentrality 2 zeta, hence
/// Q1(sqrt(2 zeta), sqrt(2 gamma0)). A zero-variance (pure LoS) channel
/// yields the 0/1 indicator of the deterministic SNR.
double coverage_from_moments(const ScenarioConfig& cfg, const ChannelMoments& moments);

double coverage_probability(const ScenarioConfig& cfg, const SlotGeometry& geom,
                            const PhaseVector& phases);

struct RateRequest {
  RateMode mode = RateMode::mean_channel;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;        // instantaneous: which draw
  std::int64_t trials = 1000;     // mc_average
};

/// Spectral efficiency B log(1 + SNR) in bit/s (log base 10 when
/// cfg.run.rate_log10 is set).
double rate_of_snr(const ScenarioConfig& cfg, double snr);

double transmission_rate(const ScenarioConfig& cfg, const SlotGeometry& geom,
                         const PhaseVector& phases, const RateRequest& request);

}  // namespace rishst
