// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rishst {

/// RIS element phases for one slot. Discrete vectors store the integer
/// level index so every entry is exactly a member of the phase set.
class PhaseVector {
 public:
  enum class Mode { discrete, continuous };

  PhaseVector() = default;

  static PhaseVector discrete(int bits, std::vector<int> levels);
  static PhaseVector continuous(std::vector<double> radians);
  static PhaseVector empty() { return {}; }

  Mode mode() const noexcept { return mode_; }
  bool is_discrete() const noexcept { return mode_ == Mode::discrete; }
  int bits() const noexcept { return bits_; }
  int levels_count() const noexcept { return 1 << bits_; }
  std::size_t size() const noexcept {
    return is_discrete() ? levels_.size() : radians_.size();
  }

  /// Phase of element n in [0, 2 pi).
  double radians(std::size_t n) const;
  int level(std::size_t n) const { return levels_.at(n); }
  const std::vector<int>& levels() const noexcept { return levels_; }
  std::vector<double> to_radians() const;

  void set_level(std::size_t n, int level);

  bool operator==(const PhaseVector&) const = default;

 private:
  Mode mode_ = Mode::continuous;
  int bits_ = 0;
  std::vector<int> levels_;
  std::vector<double> radians_;
};

/// Reduces an angle to [0, 2 pi).
double wrap_phase(double radians);

}  // namespace rishst
