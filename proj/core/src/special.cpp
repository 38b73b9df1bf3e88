// SPDX-License-Identifier: Apache-2.0
#include "dpccm/special.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "dpccm/error.hpp"

namespace dpccm {

double erfc(double x) { return std::erfc(x); }

double igammaq(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) throw UsageError("igammaq requires a > 0");
    if (!(x >= 0.0)) throw UsageError("igammaq requires x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    try {
        return boost::math::gamma_q(a, x);
    } catch (const std::exception& e) {
        throw NumericalError(std::string("igammaq did not converge: ") + e.what());
    }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace dpccm
