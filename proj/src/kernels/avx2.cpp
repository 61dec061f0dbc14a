// SPDX-License-Identifier: Apache-2.0
// AVX2 variants, four trials (or levels) per register. Built with -mavx2
// but without -mfma: every multiply and add rounds separately, matching the
// scalar reference bit for bit.
#include "rishst/kernels.hpp"

#if defined(RISHST_HAVE_AVX2)
#include <immintrin.h>

namespace rishst::kernels {
namespace {

void synthesize(const ChannelTerms& t, const GaussianBlock& g, double* h_re, double* h_im) {
  const std::size_t trials = g.trials;
  const std::size_t vec_end = trials - trials % 4;

  const __m256d d_re = _mm256_set1_pd(t.direct_los_re);
  const __m256d d_im = _mm256_set1_pd(t.direct_los_im);
  const __m256d d_n = _mm256_set1_pd(t.direct_nlos);
  std::size_t i = 0;
  for (; i < vec_end; i += 4) {
    _mm256_storeu_pd(h_re + i, _mm256_add_pd(d_re, _mm256_mul_pd(d_n, _mm256_loadu_pd(g.bm_re.data() + i))));
    _mm256_storeu_pd(h_im + i, _mm256_add_pd(d_im, _mm256_mul_pd(d_n, _mm256_loadu_pd(g.bm_im.data() + i))));
  }
  for (; i < trials; ++i) {
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

    const __m256d vsr = _mm256_set1_pd(sr), vsi = _mm256_set1_pd(si);
    const __m256d var = _mm256_set1_pd(ar), vai = _mm256_set1_pd(ai), van = _mm256_set1_pd(an);
    const __m256d vbr = _mm256_set1_pd(br), vbi = _mm256_set1_pd(bi), vbn = _mm256_set1_pd(bn);
    for (i = 0; i < vec_end; i += 4) {
      const __m256d xr = _mm256_add_pd(var, _mm256_mul_pd(van, _mm256_loadu_pd(grm_re + i)));
      const __m256d xi = _mm256_add_pd(vai, _mm256_mul_pd(van, _mm256_loadu_pd(grm_im + i)));
      const __m256d yr = _mm256_add_pd(vbr, _mm256_mul_pd(vbn, _mm256_loadu_pd(gbr_re + i)));
      const __m256d yi = _mm256_add_pd(vbi, _mm256_mul_pd(vbn, _mm256_loadu_pd(gbr_im + i)));
      const __m256d pr = _mm256_sub_pd(_mm256_mul_pd(xr, yr), _mm256_mul_pd(xi, yi));
      const __m256d pi = _mm256_add_pd(_mm256_mul_pd(xr, yi), _mm256_mul_pd(xi, yr));
      const __m256d qr = _mm256_sub_pd(_mm256_mul_pd(vsr, pr), _mm256_mul_pd(vsi, pi));
      const __m256d qi = _mm256_add_pd(_mm256_mul_pd(vsr, pi), _mm256_mul_pd(vsi, pr));
      _mm256_storeu_pd(h_re + i, _mm256_add_pd(_mm256_loadu_pd(h_re + i), qr));
      _mm256_storeu_pd(h_im + i, _mm256_add_pd(_mm256_loadu_pd(h_im + i), qi));
    }
    for (; i < trials; ++i) {
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
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m)));
  }
  for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

std::size_t count_at_least(const double* re, const double* im, std::size_t n, double threshold) {
  const __m256d thr = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    const __m256d p = _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(p, thr, _CMP_GE_OQ));
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
    if (re[i] * re[i] + im[i] * im[i] >= threshold) ++count;
  }
  return count;
}

void level_gains(double base_re, double base_im, double coeff_re, double coeff_im,
                 const double* cos_levels, const double* sin_levels, double* out,
                 std::size_t levels) {
  const __m256d b_re = _mm256_set1_pd(base_re), b_im = _mm256_set1_pd(base_im);
  const __m256d c_re = _mm256_set1_pd(coeff_re), c_im = _mm256_set1_pd(coeff_im);
  std::size_t l = 0;
  for (; l + 4 <= levels; l += 4) {
    const __m256d c = _mm256_loadu_pd(cos_levels + l);
    const __m256d s = _mm256_loadu_pd(sin_levels + l);
    const __m256d re = _mm256_add_pd(b_re, _mm256_sub_pd(_mm256_mul_pd(c_re, c), _mm256_mul_pd(c_im, s)));
    const __m256d im = _mm256_add_pd(b_im, _mm256_add_pd(_mm256_mul_pd(c_re, s), _mm256_mul_pd(c_im, c)));
    _mm256_storeu_pd(out + l, _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
  }
  for (; l < levels; ++l) {
    const double re = base_re + (coeff_re * cos_levels[l] - coeff_im * sin_levels[l]);
    const double im = base_im + (coeff_re * sin_levels[l] + coeff_im * cos_levels[l]);
    out[l] = re * re + im * im;
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", &synthesize, &power, &count_at_least, &level_gains};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

}  // namespace rishst::kernels

#else

namespace rishst::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace rishst::kernels

#endif
