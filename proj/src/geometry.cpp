// SPDX-License-Identifier: Apache-2.0
#include "rishst/geometry.hpp"

#include <cmath>

namespace rishst {

double train_offset(const ScenarioConfig& cfg, std::int64_t t) {
  const auto& g = cfg.geometry;
  return g.k_m - g.v_mps * static_cast<double>(t) * g.slot_s;
}

SlotGeometry geometry_at_offset(const ScenarioConfig& cfg, double x_offset_m, double d_ris_l,
                                std::int64_t t) {
  const auto& g = cfg.geometry;
  SlotGeometry s;
  s.t = t;
  s.x_offset_m = x_offset_m;
  s.d_bm_m = std::sqrt(g.d_bs_v_m * g.d_bs_v_m + (g.h_bs_m - g.h_mr_m) * (g.h_bs_m - g.h_mr_m) +
                       x_offset_m * x_offset_m);
  const double dv = g.d_bs_v_m - g.d_ris_v_m;
  const double dh = g.h_bs_m - g.h_ris_m;
  s.d_br_m = std::sqrt(d_ris_l * d_ris_l + dh * dh + dv * dv);
  const double along = x_offset_m - d_ris_l;
  s.d_rm_m = std::sqrt(g.d_ris_v_m * g.d_ris_v_m + (g.h_ris_m - g.h_mr_m) * (g.h_ris_m - g.h_mr_m) +
                       along * along);
  return s;
}

SlotGeometry slot_geometry(const ScenarioConfig& cfg, std::int64_t t, double d_ris_l) {
  return geometry_at_offset(cfg, train_offset(cfg, t), d_ris_l, t);
}

}  // namespace rishst
