// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace rishst::kernels {

/// Per-slot channel coefficients in structure-of-arrays form. Element n of
/// the cascade contributes steer_n * (rm_los_n + rm_nlos_n g_rm) * (br_los_n + br_nlos_n g_br).
struct ChannelTerms {
  double direct_los_re = 0.0;
  double direct_los_im = 0.0;
  double direct_nlos = 0.0;
  std::vector<double> steer_re, steer_im;
  std::vector<double> rm_los_re, rm_los_im, rm_nlos;
  std::vector<double> br_los_re, br_los_im, br_nlos;

  std::size_t elements() const noexcept { return steer_re.size(); }
};

/// Standard complex Gaussian draws for a block of trials. Element-major
/// layout: the draw for element n, trial i is at [n * trials + i].
struct GaussianBlock {
  std::size_t trials = 0;
  std::vector<double> bm_re, bm_im;
  std::vector<double> br_re, br_im;
  std::vector<double> rm_re, rm_im;

  void resize(std::size_t trial_count, std::size_t elements);
};

/// Function table for one instruction set. Every variant performs the same
/// per-lane operation sequence without contraction, so outputs are
/// bit-identical across variants.
struct KernelTable {
  std::string_view name;

  /// h_i = direct_los + direct_nlos g_bm_i + sum_n cascade_n(i) for each trial.
  void (*synthesize)(const ChannelTerms& terms, const GaussianBlock& draws, double* h_re,
                     double* h_im);

  /// out_i = re_i^2 + im_i^2.
  void (*power)(const double* re, const double* im, double* out, std::size_t n);

  /// Number of i with re_i^2 + im_i^2 >= threshold.
  std::size_t (*count_at_least)(const double* re, const double* im, std::size_t n,
                                double threshold);

  /// out_l = |base + coeff * (cos_l + j sin_l)|^2 for every level l.
  void (*level_gains)(double base_re, double base_im, double coeff_re, double coeff_im,
                      const double* cos_levels, const double* sin_levels, double* out,
                      std::size_t levels);
};

enum class Isa { scalar, avx2 };

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_table();

/// Table used by the library. Picks the widest supported variant at first
/// use unless RISHST_SIMD=scalar|avx2 is set in the environment.
const KernelTable& active();

/// Forces a variant; returns false (and changes nothing) when unsupported.
bool select(Isa isa);

}  // namespace rishst::kernels
