// SPDX-License-Identifier: Apache-2.0
#include "rishst/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rishst {

double wrap_phase(double radians) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(radians, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;  // fmod rounding can land exactly on 2 pi
  return r;
}

PhaseVector PhaseVector::discrete(int bits, std::vector<int> levels) {
  if (bits < 1 || bits > 16) throw std::invalid_argument("PhaseVector: bits must be in [1, 16]");
  const int m = 1 << bits;
  for (const int l : levels) {
    if (l < 0 || l >= m) {
      throw std::invalid_argument("PhaseVector: level " + std::to_string(l) + " outside [0, " +
                                  std::to_string(m) + ")");
    }
  }
  PhaseVector p;
  p.mode_ = Mode::discrete;
  p.bits_ = bits;
  p.levels_ = std::move(levels);
  return p;
}

PhaseVector PhaseVector::continuous(std::vector<double> radians) {
  for (auto& r : radians) r = wrap_phase(r);
  PhaseVector p;
  p.mode_ = Mode::continuous;
  p.radians_ = std::move(radians);
  return p;
}

double PhaseVector::radians(std::size_t n) const {
  if (is_discrete()) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(1 << bits_);
    return step * static_cast<double>(levels_.at(n));
  }
  return radians_.at(n);
}

std::vector<double> PhaseVector::to_radians() const {
  std::vector<double> out(size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = radians(n);
  return out;
}

void PhaseVector::set_level(std::size_t n, int level) {
  if (!is_discrete()) throw std::logic_error("PhaseVector::set_level on a continuous vector");
  if (level < 0 || level >= (1 << bits_)) throw std::invalid_argument("PhaseVector: level out of range");
  levels_.at(n) = level;
}

}  // namespace rishst
