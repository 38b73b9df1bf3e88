// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace dpccm {

/// Complementary error function.
double erfc(double x);

/// Regularised upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
/// Requires a > 0 and x >= 0.
double igammaq(double a, double x);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace dpccm
