#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "rishst/kernels.hpp"

using namespace rishst::kernels;

namespace {

ChannelTerms random_terms(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ChannelTerms t;
  t.direct_los_re = g(gen);
  t.direct_los_im = g(gen);
  t.direct_nlos = std::abs(g(gen));
  for (auto* v : {&t.steer_re, &t.steer_im, &t.rm_los_re, &t.rm_los_im, &t.rm_nlos, &t.br_los_re,
                  &t.br_los_im, &t.br_nlos}) {
    v->resize(n);
    for (auto& x : *v) x = g(gen) * 1e-3;
  }
  return t;
}

GaussianBlock random_block(std::mt19937_64& gen, std::size_t trials, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  GaussianBlock b;
  b.resize(trials, n);
  for (auto* v : {&b.bm_re, &b.bm_im, &b.br_re, &b.br_im, &b.rm_re, &b.rm_im}) {
    for (auto& x : *v) x = g(gen);
  }
  return b;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("dispatch picks a supported table") {
  const auto& k = active();
  CHECK((k.name == "scalar" || k.name == "avx2"));
  CHECK(select(Isa::scalar));
  CHECK(active().name == "scalar");
  if (avx2_table() != nullptr) {
    CHECK(select(Isa::avx2));
    CHECK(active().name == "avx2");
  } else {
    CHECK_FALSE(select(Isa::avx2));
  }
  select(k.name == "avx2" ? Isa::avx2 : Isa::scalar);
}

TEST_CASE("SIMD variant is bit-identical to the scalar reference") {
  const KernelTable* simd = avx2_table();
  if (simd == nullptr) {
    MESSAGE("AVX2 variant unavailable on this host; only the scalar path is exercised");
    return;
  }
  const KernelTable& ref = scalar_table();
  std::mt19937_64 gen(42);
  for (std::size_t trials : {1u, 3u, 4u, 7u, 64u, 2048u, 2051u}) {
    for (std::size_t n : {0u, 1u, 3u, 60u}) {
      const auto terms = random_terms(gen, n);
      const auto block = random_block(gen, trials, n);
      std::vector<double> r_re(trials), r_im(trials), s_re(trials), s_im(trials);
      ref.synthesize(terms, block, r_re.data(), r_im.data());
      simd->synthesize(terms, block, s_re.data(), s_im.data());
      CHECK(same_bits(r_re, s_re));
      CHECK(same_bits(r_im, s_im));

      std::vector<double> rp(trials), sp(trials);
      ref.power(r_re.data(), r_im.data(), rp.data(), trials);
      simd->power(r_re.data(), r_im.data(), sp.data(), trials);
      CHECK(same_bits(rp, sp));

      const double thr = rp[trials / 2];
      CHECK(ref.count_at_least(r_re.data(), r_im.data(), trials, thr) ==
            simd->count_at_least(r_re.data(), r_im.data(), trials, thr));
    }
  }
  for (std::size_t m : {2u, 4u, 8u, 32u, 5u}) {
    std::vector<double> c(m), s(m), ro(m), so(m);
    for (std::size_t l = 0; l < m; ++l) {
      c[l] = std::cos(0.3 * l);
      s[l] = std::sin(0.3 * l);
    }
    ref.level_gains(0.4, -1.1, 0.02, 0.07, c.data(), s.data(), ro.data(), m);
    simd->level_gains(0.4, -1.1, 0.02, 0.07, c.data(), s.data(), so.data(), m);
    CHECK(same_bits(ro, so));
  }
}

TEST_CASE("scalar reference arithmetic") {
  const auto& k = scalar_table();
  const double re[] = {3.0, 0.0, 1.0};
  const double im[] = {4.0, 2.0, 1.0};
  double out[3];
  k.power(re, im, out, 3);
  CHECK(out[0] == 25.0);
  CHECK(out[1] == 4.0);
  CHECK(out[2] == 2.0);
  CHECK(k.count_at_least(re, im, 3, 4.0) == 2);
  const double c[] = {1.0, -1.0};
  const double s[] = {0.0, 0.0};
  double g[2];
  k.level_gains(1.0, 0.0, 0.5, 0.0, c, s, g, 2);
  CHECK(g[0] == 2.25);
  CHECK(g[1] == 0.25);
}

}
