#include "ppmsync/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppmsync {

Interval wilson_interval(double successes, double n, double z) {
    if (n < 0.0 || successes < 0.0 || successes > n) {
        throw std::invalid_argument("wilson_interval: need 0 <= successes <= n");
    }
    if (n == 0.0) return {0.0, 1.0};
    const double p = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace ppmsync
