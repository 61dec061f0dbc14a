// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rishst {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// First-order Marcum Q-function Q1(a, b), the complementary CDF of a
/// Rician envelope. Values below 1e-300 are returned as 0 and values above
/// 1 - 1e-16 as 1. Throws DomainError for negative or non-finite input.
double marcum_q1(double a, double b);

/// CDF of the non-central chi-square distribution with two degrees of freedom.
double noncentral_chi2_cdf(double x, double noncentrality);

}  // namespace rishst
