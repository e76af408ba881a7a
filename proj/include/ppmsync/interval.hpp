#pragma once

#include <cstdint>

namespace ppmsync {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Two-sided normal quantile for 95% coverage.
inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for `successes` out of `n` Bernoulli trials.
/// `successes` may be fractional (pooled proportions); n = 0 gives [0, 1].
Interval wilson_interval(double successes, double n, double z = kZ95);

}  // namespace ppmsync
