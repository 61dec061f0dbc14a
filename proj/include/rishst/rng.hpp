// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace rishst {

/// Stream purposes; part of the key so independent uses never share draws.
enum class StreamPurpose : std::uint64_t {
  channel = 1,
  phase_init = 2,
  random_phase = 3,
  slot_sample = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the i-th output is a pure function of
/// (seed, purpose, slot, trial, i), so results never depend on which worker
/// draws them or in what order.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t slot, std::uint64_t trial = 0)
      : key_(splitmix64(splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(purpose))) ^
                                   slot) ^
                        trial)) {}

  std::uint64_t at(std::uint64_t counter) const {
    return splitmix64(key_ + counter * 0xd1b54a32d192ed03ULL);
  }

  std::uint64_t next_u64() { return at(counter_++); }

  /// Uniform in (0, 1]; never returns 0 so log() is always finite.
  double uniform_open_zero() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) by multiply-shift.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// CN(0, 1): each component has variance 1/2.
  std::complex<double> complex_gaussian() {
    const double radius = std::sqrt(-std::log(uniform_open_zero()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  void seek(std::uint64_t counter) { counter_ = counter; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rishst
