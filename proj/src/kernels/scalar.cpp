// SPDX-License-Identifier: Apache-2.0
// Reference kernels. The SIMD variants must reproduce these operation by
// operation; see tests/test_kernels.cpp.
#include "rishst/kernels.hpp"

namespace rishst::kernels {
namespace {

void synthesize(const ChannelTerms& t, const GaussianBlock& g, double* h_re, double* h_im) {
  const std::size_t trials = g.trials;
  for (std::size_t i = 0; i < trials; ++i) {
    h_re[i] = t.direct_los_re + t.direct_nlos * g.bm_re[i];
    h_im[i] = t.direct_los_im + t.direct_nlos * g.bm_im[i];
  }
  for (std::size_t n = 0; n < t.elements(); ++n) {
    const double sr = t.steer_re[n], si = t.steer_im[n];
    const double ar = t.rm_los_re[n], ai = t.rm_los_im[n], an = t.rm_nlos[n];
    const double br = t.br_los_re[n], bi = t.br_los_im[n], bn = t.br_nlos[n];
    const double* grm_re = g.rm_re.data() + n * trials;
    const double* grm_im = g.rm_im.data() + n * trials;
    const double* gbr_re = g.br_re.data() + n * trials;
    const double* gbr_im = g.br_im.data() + n * trials;
    for (std::size_t i = 0; i < trials; ++i) {
      const double xr = ar + an * grm_re[i];
      const double xi = ai + an * grm_im[i];
      const double yr = br + bn * gbr_re[i];
      const double yi = bi + bn * gbr_im[i];
      const double pr = xr * yr - xi * yi;
      const double pi = xr * yi + xi * yr;
      h_re[i] += sr * pr - si * pi;
      h_im[i] += sr * pi + si * pr;
    }
  }
}

void power(const double* re, const double* im, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

std::size_t count_at_least(const double* re, const double* im, std::size_t n, double threshold) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (re[i] * re[i] + im[i] * im[i] >= threshold) ++count;
  }
  return count;
}

void level_gains(double base_re, double base_im, double coeff_re, double coeff_im,
                 const double* cos_levels, const double* sin_levels, double* out,
                 std::size_t levels) {
  for (std::size_t l = 0; l < levels; ++l) {
    const double re = base_re + (coeff_re * cos_levels[l] - coeff_im * sin_levels[l]);
    const double im = base_im + (coeff_re * sin_levels[l] + coeff_im * cos_levels[l]);
    out[l] = re * re + im * im;
  }
}

}  // namespace

void GaussianBlock::resize(std::size_t trial_count, std::size_t elements) {
  trials = trial_count;
  bm_re.assign(trial_count, 0.0);
  bm_im.assign(trial_count, 0.0);
  br_re.assign(trial_count * elements, 0.0);
  br_im.assign(trial_count * elements, 0.0);
  rm_re.assign(trial_count * elements, 0.0);
  rm_im.assign(trial_count * elements, 0.0);
}

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &synthesize, &power, &count_at_least, &level_gains};
  return table;
}

}  // namespace rishst::kernels
