// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "rishst/channel.hpp"

namespace rishst {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Trials are processed in fixed blocks of this size; per-block partial
/// results are merged in block order, so the estimate does not depend on
/// the number of workers.
inline constexpr std::size_t kMcBlockTrials = 2048;

/// Fraction of draws with P |h|^2 / sigma^2 >= gamma_th. Throws
/// std::invalid_argument for fewer than 100 trials.
McEstimate estimate_coverage(const ScenarioConfig& cfg, const SlotGeometry& geom,
                             const PhaseVector& phases, std::int64_t trials, std::uint64_t seed,
                             int threads = 1);

/// Sample mean of B log(1 + SNR) over the draws.
McEstimate estimate_rate(const ScenarioConfig& cfg, const SlotGeometry& geom,
                         const PhaseVector& phases, std::int64_t trials, std::uint64_t seed,
                         int threads = 1);

}  // namespace rishst
