// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "rishst/geometry.hpp"
#include "rishst/kernels.hpp"
#include "rishst/phase.hpp"
#include "rishst/scenario.hpp"
#include "rishst/specfun.hpp"

namespace rishst {

using cplx = std::complex<double>;

/// Power-law path gain d^{-exponent}. Throws DomainError when d <= 0.
double path_loss(double d, double exponent);

/// 2 pi d / lambda reduced to [0, 2 pi).
double phase_of_distance(double d, double wavelength);

/// Deterministic line-of-sight parts of the equivalent channel, before the
/// RIS phases are applied. Each cascade entry is
/// rho_RM rho_BR sqrt(PL_RM PL_BR) e^{-j(theta_RM + theta_BR)}.
struct LosComponents {
  cplx los_bm;
  std::vector<cplx> los_cascade;
};

LosComponents los_components(const ScenarioConfig& cfg, const SlotGeometry& geom);

/// Per-link coefficients for one slot: LoS parts carry the K-factor weight,
/// path gain and phase; NLoS scales multiply a CN(0, 1) draw.
struct SlotChannel {
  cplx direct_los;
  double direct_nlos = 0.0;
  cplx br_los;
  double br_nlos = 0.0;
  cplx rm_los;
  double rm_nlos = 0.0;
  std::size_t elements = 0;
};

SlotChannel slot_channel(const ScenarioConfig& cfg, const SlotGeometry& geom);

/// SoA coefficients for the batch kernels.
kernels::ChannelTerms channel_terms(const SlotChannel& channel, const PhaseVector& phases);

/// Equivalent channel of one trial; `components` holds the six-way split
/// (direct LoS, direct NLoS, LoS-LoS, LoS-NLoS, NLoS-LoS, NLoS-NLoS cascades).
struct ChannelRealization {
  cplx h;
  std::optional<std::array<cplx, 6>> components;
};

/// Identifies one Monte Carlo trial; the slot comes from the geometry.
struct DrawKey {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// Link ids inside a trial's stream: 0 is BS-MR, then BS-RIS and RIS-MR per element.
constexpr std::uint64_t link_id_bm() { return 0; }
constexpr std::uint64_t link_id_br(std::size_t n) { return 1 + 2 * static_cast<std::uint64_t>(n); }
constexpr std::uint64_t link_id_rm(std::size_t n) { return 2 + 2 * static_cast<std::uint64_t>(n); }

ChannelRealization draw_channel(const ScenarioConfig& cfg, const SlotGeometry& geom,
                                const PhaseVector& phases, const DrawKey& key,
                                bool with_components = false);

/// Fills `block` with the draws of trials [first_trial, first_trial + count)
/// of slot `slot`, identical to what draw_channel consumes.
void fill_gaussians(kernels::GaussianBlock& block, std::uint64_t seed, std::uint64_t slot,
                    std::uint64_t first_trial, std::size_t count, std::size_t elements);

/// Throws std::invalid_argument unless phases.size() equals the configured N.
void check_phase_length(const ScenarioConfig& cfg, const PhaseVector& phases);

}  // namespace rishst
