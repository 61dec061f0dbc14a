// SPDX-License-Identifier: Apache-2.0
#include "rishst/specfun.hpp"

#include <cmath>

namespace rishst {
namespace {

constexpr double kUnderflow = 1e-300;
constexpr double kSaturation = 1e-16;
constexpr double kRescaleAbove = 1e250;
constexpr double kSmallProduct = 1e-8;

struct BesselSums {
  double first = 0.0;     // e^{-x} I_0(x)
  double weighted = 0.0;  // sum_{k>=1} r^k e^{-x} I_k(x)
};

// Miller's backward recurrence for I_k(x), normalized through
// I_0 + 2 sum_{k>=1} I_k = e^x, so the result is already scaled by e^{-x}.
// The weighted tail is accumulated Horner-style while descending.
BesselSums scaled_bessel_sums(double x, double r) {
  const int start = 40 + static_cast<int>(std::ceil(12.0 * std::sqrt(x)));
  double above = 0.0;     // I_{k+1}
  double current = 1e-280;  // I_k, arbitrary seed
  double norm = 0.0;      // 2 sum_{j>=k} I_j
  double horner = 0.0;    // sum_{j>=k} r^{j-k} I_j
  for (int k = start; k >= 1; --k) {
    norm += 2.0 * current;
    horner = current + r * horner;
    const double below = above + (2.0 * k / x) * current;
    above = current;
    current = below;
    if (current > kRescaleAbove) {
      const double s = 1.0 / current;
      above *= s;
      current = 1.0;
      norm *= s;
      horner *= s;
    }
  }
  // `current` now holds the unnormalized I_0.
  norm += current;
  BesselSums out;
  out.first = current / norm;
  out.weighted = r * horner / norm;
  return out;
}

double clamp_probability(double q) {
  if (q < kUnderflow) return 0.0;
  if (q > 1.0 - kSaturation) return 1.0;
  return q;
}

}  // namespace

double marcum_q1(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || b < 0.0) {
    throw DomainError("marcum_q1: arguments must be finite and non-negative");
  }
  if (b == 0.0) return 1.0;
  if (a == 0.0) return clamp_probability(std::exp(-0.5 * b * b));

  const double x = a * b;
  if (a < b) {
    // Q1 = e^{-(b-a)^2/2} sum_{k>=0} (a/b)^k e^{-x} I_k(x); the sum is <= 1.
    const double log_prefactor = -0.5 * (b - a) * (b - a);
    if (log_prefactor < std::log(kUnderflow)) return 0.0;
    const double r = a / b;
    double series;
    if (x < kSmallProduct) {
      // I_0 ~ 1 + x^2/4, I_1 ~ x/2, I_2 ~ x^2/8
      series = std::exp(-x) * (1.0 + 0.25 * x * x + r * 0.5 * x + r * r * 0.125 * x * x);
    } else {
      const auto sums = scaled_bessel_sums(x, r);
      series = sums.first + sums.weighted;
    }
    return clamp_probability(std::exp(log_prefactor) * series);
  }

  // 1 - Q1 = e^{-(a-b)^2/2} sum_{k>=1} (b/a)^k e^{-x} I_k(x); the sum is <= 1/2.
  const double log_prefactor = -0.5 * (a - b) * (a - b);
  if (log_prefactor < std::log(2.0 * kSaturation)) return 1.0;
  const double r = b / a;
  double tail;
  if (x < kSmallProduct) {
    tail = std::exp(-x) * (r * 0.5 * x + r * r * 0.125 * x * x);
  } else {
    tail = scaled_bessel_sums(x, r).weighted;
  }
  return clamp_probability(1.0 - std::exp(log_prefactor) * tail);
}

double noncentral_chi2_cdf(double x, double noncentrality) {
  if (!std::isfinite(x) || !std::isfinite(noncentrality) || x < 0.0 || noncentrality < 0.0) {
    throw DomainError("noncentral_chi2_cdf: arguments must be finite and non-negative");
  }
  return 1.0 - marcum_q1(std::sqrt(noncentrality), std::sqrt(x));
}

}  // namespace rishst
