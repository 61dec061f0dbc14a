// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "rishst/scenario.hpp"

namespace rishst {

/// Train position and the three link lengths for one slot. The RIS is
/// treated in the far field, so one BS-RIS and one RIS-MR distance serve
/// every element.
struct SlotGeometry {
  std::int64_t t = 0;
  double x_offset_m = 0.0;  // k - v t tau, signed; negative once the train has passed the BS
  double d_bm_m = 0.0;
  double d_br_m = 0.0;
  double d_rm_m = 0.0;
};

/// Horizontal train offset from the BS foot at slot t (1-based).
double train_offset(const ScenarioConfig& cfg, std::int64_t t);

SlotGeometry slot_geometry(const ScenarioConfig& cfg, std::int64_t t, double d_ris_l);

/// Same distances for an explicit offset; slot index is carried through unchanged.
SlotGeometry geometry_at_offset(const ScenarioConfig& cfg, double x_offset_m, double d_ris_l,
                                std::int64_t t = 0);

}  // namespace rishst
