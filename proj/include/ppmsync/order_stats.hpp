// order_stats.hpp - Gaussian order statistics and the dominance analysis
//
// Cramer's large-G expansion for the nu-th largest of G i.i.d. N(m, sigma^2):
//
//   E[nu:G]   = m + sigma * ( sqrt(2 ln G)
//                 - (ln ln G + ln 4pi + 2 (S1(nu) - C)) / (2 sqrt(2 ln G)) )
//   var[nu:G] = sigma^2 / (2 ln G) * (pi^2/6 - S2(nu))
//
// with S1, S2 the harmonic partial sums up to nu-1 and C Euler's constant.
// The O(1/ln G) and O(1/ln^2 G) remainders are dropped; order_stat_oracle
// integrates the exact order-statistic density to measure what that costs.

#pragma once

#include <cstdint>
#include <optional>

#include "ppmsync/params.hpp"
#include "ppmsync/random.hpp"

namespace ppmsync {

struct HarmonicSums {
    double s1 = 0.0;  // sum_{j<nu} 1/j
    double s2 = 0.0;  // sum_{j<nu} 1/j^2
};

HarmonicSums harmonic_sums(std::uint64_t nu);

struct OrderStatQuery {
    std::uint64_t nu = 1;         // rank from the top
    std::uint64_t population = 1; // G
    double mean = 0.0;
    double sigma = 1.0;
};

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

/// Expansion evaluated at a real-valued ln G; requires ln G > 1.
double cramer_mean_at(std::uint64_t nu, double log_population, double mean = 0.0, double sigma = 1.0);
double cramer_var_at(std::uint64_t nu, double log_population, double sigma = 1.0);

/// Integer-population forms; G must be >= 3 and >= nu.
double cramer_mean(const OrderStatQuery& q);
double cramer_var(const OrderStatQuery& q);

inline constexpr std::uint64_t kMaxOraclePopulation = 10'000'000;

/// Exact mean and variance of the nu-th largest of G standard normals by
/// adaptive Gauss-Kronrod quadrature of the order-statistic density.
Moments order_stat_oracle(std::uint64_t nu, std::uint64_t population);

struct EmpiricalMoments {
    double mean = 0.0;
    double var = 0.0;
    double se = 0.0;  // standard error of the mean
};

EmpiricalMoments empirical_order_stat(std::uint64_t nu, std::uint64_t population,
                                      std::uint64_t trials, RandomStream& rng);

/// Noise side: S_nu ranks the M-L noise samples. Signal side: B_nu ranks the
/// L signal samples. D = S_L - B_1. S_L and D are absent when L > M - L.
struct DominanceReport {
    std::optional<double> mean_SL, var_SL;
    double mean_B1 = 0.0, var_B1 = 0.0;
    double mean_S1 = 0.0, var_S1 = 0.0;
    double mean_BL = 0.0, var_BL = 0.0;
    std::optional<double> mean_D, var_D;
    /// 1 - var_D / mean_D^2 clamped at 0; present only when mean_D > 0.
    std::optional<double> chebyshev_lower_bound;
};

/// Requires M >= 3 and 1 <= L < M. Populations of size <= 2 (where ln ln G
/// is undefined or negative) are served by the exact oracle instead.
DominanceReport dominance_report(const CanonicalParams& c);

/// Leading-order means: the expansion with S1(nu) replaced by ln nu and the
/// ln ln G, ln 4pi and C terms dropped. Requires L >= 2 and M - L >= 2.
struct LeadingOrderMeans {
    double mean_SL = 0.0;  // sqrt(2 ln(M-L)) - ln L / sqrt(2 ln(M-L))
    double mean_B1 = 0.0;  // A + sqrt(2 ln L)
    double mean_S1 = 0.0;  // sqrt(2 ln(M-L))
    double mean_BL = 0.0;  // A + sqrt(ln L / 2)
};

LeadingOrderMeans leading_order_means(const CanonicalParams& c);

struct PriorCondition {
    bool holds = false;
    double rhs = 0.0;
};

/// Earlier sufficient condition for ML synchronization:
/// L < sqrt(E ln(W k2) / (k3 ln 2 W T_d)).
PriorCondition prior_condition(const PhysicalParams& p, std::uint64_t num_paths);

}  // namespace ppmsync
