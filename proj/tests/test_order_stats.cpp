#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ppmsync/order_stats.hpp"

using namespace ppmsync;

namespace {

// Independent high-precision values (30-digit mpmath quadrature of the
// order-statistic density), frozen here.
struct Reference {
    std::uint64_t nu, population;
    double mean, var;
};

constexpr Reference kReference[] = {
    {1, 2, 0.564189583547756, 0.681690113816209},
    {1, 3, 0.846284375321634, 0.559467203797367},
    {1, 100, 2.50759363644168, 0.184404813585825},
    {2, 100, 2.14814454414457, 0.0957216905008429},
    {5, 100, 1.68717705226389, 0.0467574010464091},
    {10, 1000, 2.34312361032419, 0.0143644799405976},
    {1, 1000000, 4.86289748619646, 0.0615062714128305},
    {2, 1000000, 4.66461817733774, 0.026679943207934},
    {5, 1000000, 4.43841139244532, 0.0101692150437121},
};

}  // namespace

TEST_CASE("harmonic_sums") {
    CHECK(harmonic_sums(1).s1 == 0.0);
    CHECK(harmonic_sums(1).s2 == 0.0);
    CHECK(harmonic_sums(2).s1 == 1.0);
    CHECK(harmonic_sums(2).s2 == 1.0);
    CHECK(harmonic_sums(5).s1 == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    CHECK(harmonic_sums(5).s2 == doctest::Approx(205.0 / 144.0).epsilon(1e-15));
    CHECK_THROWS(harmonic_sums(0));
}

TEST_CASE("cramer_mean at ln G = 8") {
    CHECK(cramer_mean_at(1, 8.0) == doctest::Approx(3.567995692644242).epsilon(1e-13));
    CHECK(cramer_mean_at(2, 8.0) == doctest::Approx(3.317995692644242).epsilon(1e-13));
    CHECK(cramer_mean_at(1, 8.0, 2.0, 3.0) == doctest::Approx(12.703987077932727).epsilon(1e-13));
}

TEST_CASE("cramer_var at ln G = 8") {
    CHECK(cramer_var_at(1, 8.0) == doctest::Approx(0.10280837917801415).epsilon(1e-13));
    CHECK(cramer_var_at(2, 8.0) == doctest::Approx(0.04030837917801415).epsilon(1e-13));
    CHECK(cramer_var_at(1, 8.0, 2.0) == doctest::Approx(0.4112335167120566).epsilon(1e-13));
}

TEST_CASE("cramer domain") {
    CHECK_THROWS(cramer_mean({1, 2, 0.0, 1.0}));
    CHECK_THROWS(cramer_var({1, 2, 0.0, 1.0}));
    CHECK_THROWS(cramer_mean({4, 3, 0.0, 1.0}));
    CHECK_THROWS(cramer_mean_at(1, 1.0));
    CHECK_NOTHROW(cramer_mean({1, 3, 0.0, 1.0}));
    // Integer and real-valued forms agree.
    CHECK(cramer_mean({3, 5000, 1.5, 2.0}) == doctest::Approx(cramer_mean_at(3, std::log(5000.0), 1.5, 2.0)));
}

TEST_CASE("order_stat_oracle: trivial and closed forms") {
    const Moments one = order_stat_oracle(1, 1);
    CHECK(std::abs(one.mean) <= 1e-9);
    CHECK(std::abs(one.var - 1.0) <= 1e-9);
    CHECK(std::abs(order_stat_oracle(1, 2).mean - 1.0 / std::sqrt(std::numbers::pi)) <= 1e-9);
    CHECK(std::abs(order_stat_oracle(1, 3).mean - 1.5 / std::sqrt(std::numbers::pi)) <= 1e-9);
    // Var of max of two standard normals: 1 - 1/pi.
    CHECK(std::abs(order_stat_oracle(1, 2).var - (1.0 - 1.0 / std::numbers::pi)) <= 1e-9);
}

TEST_CASE("order_stat_oracle: frozen high-precision references") {
    for (const auto& r : kReference) {
        CAPTURE(r.nu);
        CAPTURE(r.population);
        const Moments m = order_stat_oracle(r.nu, r.population);
        CHECK(std::abs(m.mean - r.mean) <= 1e-9);
        CHECK(std::abs(m.var - r.var) <= 1e-9);
    }
}

TEST_CASE("order_stat_oracle: guards") {
    CHECK_THROWS(order_stat_oracle(0, 5));
    CHECK_THROWS(order_stat_oracle(6, 5));
    CHECK_THROWS(order_stat_oracle(1, kMaxOraclePopulation + 1));
    CHECK_NOTHROW(order_stat_oracle(1, kMaxOraclePopulation));
    CHECK_NOTHROW(order_stat_oracle(kMaxOraclePopulation / 2, kMaxOraclePopulation));
}

TEST_CASE("order_stat_oracle: monotone in rank, means sum to zero, symmetry") {
    for (std::uint64_t g = 1; g <= 20; ++g) {
        double total = 0.0;
        double prev = std::numeric_limits<double>::infinity();
        for (std::uint64_t nu = 1; nu <= g; ++nu) {
            const Moments m = order_stat_oracle(nu, g);
            CHECK(m.mean < prev);
            CHECK(m.var > 0.0);
            prev = m.mean;
            total += m.mean;
        }
        CHECK(std::abs(total) <= 1e-8);
    }
    for (std::uint64_t g : {2u, 7u, 30u, 64u, 100u}) {
        CHECK(std::abs(order_stat_oracle(g, g).mean + order_stat_oracle(1, g).mean) <= 1e-8);
    }
}

TEST_CASE("Cramer error shrinks with G") {
    for (std::uint64_t nu : {1u, 2u, 5u}) {
        const double small = std::abs(cramer_mean({nu, 100, 0.0, 1.0}) - order_stat_oracle(nu, 100).mean);
        const double large = std::abs(cramer_mean({nu, 1000000, 0.0, 1.0}) - order_stat_oracle(nu, 1000000).mean);
        CAPTURE(nu);
        CHECK(large < small);
    }
    const double small = std::abs(cramer_var({1, 100, 0.0, 1.0}) - order_stat_oracle(1, 100).var);
    const double large = std::abs(cramer_var({1, 1000000, 0.0, 1.0}) - order_stat_oracle(1, 1000000).var);
    CHECK(large < small);
}

TEST_CASE("empirical_order_stat agrees with the oracle") {
    RandomStream rng(31);
    const auto max2 = empirical_order_stat(1, 2, 100000, rng);
    CHECK(std::abs(max2.mean - 0.564189583547756) <= 4.0 * max2.se);

    const auto max50 = empirical_order_stat(1, 50, 20000, rng);
    const auto min50 = empirical_order_stat(50, 50, 20000, rng);
    const double se = std::hypot(max50.se, min50.se);
    CHECK(std::abs(min50.mean + max50.mean) <= 4.0 * se);

    const auto e = empirical_order_stat(3, 40, 20000, rng);
    CHECK(std::abs(e.mean - order_stat_oracle(3, 40).mean) <= 4.0 * e.se);
    CHECK(e.var == doctest::Approx(order_stat_oracle(3, 40).var).epsilon(0.05));

    CHECK_THROWS(empirical_order_stat(1, 10, 99, rng));
}

TEST_CASE("dominance_report: definitional consistency") {
    for (auto c : {CanonicalParams{1024, 6, 2.0}, CanonicalParams{4194304, 46, 2.0}, CanonicalParams{5000, 700, 1.0}}) {
        const DominanceReport r = dominance_report(c);
        REQUIRE(r.mean_D.has_value());
        CHECK(*r.mean_D == *r.mean_SL - r.mean_B1);
        CHECK(*r.var_D == *r.var_SL + r.var_B1);
        if (*r.mean_D > 0.0) {
            REQUIRE(r.chebyshev_lower_bound.has_value());
            CHECK(*r.chebyshev_lower_bound >= 0.0);
            CHECK(*r.chebyshev_lower_bound <= 1.0);
        } else {
            CHECK_FALSE(r.chebyshev_lower_bound.has_value());
        }
        const double a = c.amplitude();
        const std::uint64_t noise = c.num_positions - c.num_paths;
        CHECK(*r.mean_SL == doctest::Approx(cramer_mean({c.num_paths, noise, 0.0, 1.0})));
        CHECK(r.mean_B1 == doctest::Approx(cramer_mean({1, c.num_paths, a, 1.0})));
        CHECK(r.mean_BL == doctest::Approx(cramer_mean({c.num_paths, c.num_paths, a, 1.0})));
        CHECK(r.var_S1 == doctest::Approx(cramer_var({1, noise, 0.0, 1.0})));
    }
}

TEST_CASE("dominance_report: sign of mean_D") {
    // M = 2^10, L = 6, k = 2: the signal maximum still wins on average.
    const DominanceReport low = dominance_report({1024, 6, 2.0});
    CHECK(*low.mean_D <= 0.0);
    CHECK_FALSE(low.chebyshev_lower_bound.has_value());

    // M = 2^22 with L = ceil(M^0.25) = 46 and with L = 65.
    for (std::uint64_t l : {46u, 65u}) {
        const DominanceReport r = dominance_report({4194304, l, 2.0});
        CHECK(*r.mean_SL > r.mean_B1);
        CHECK(*r.mean_D > 0.0);
        REQUIRE(r.chebyshev_lower_bound.has_value());
    }
}

TEST_CASE("dominance_report: small populations and missing S_L") {
    // L = 1: B_1 = B_L is a plain N(A, 1).
    const CanonicalParams single{100, 1, 2.0};
    const DominanceReport r1 = dominance_report(single);
    CHECK(r1.mean_B1 == single.amplitude());
    CHECK(r1.mean_BL == single.amplitude());
    CHECK(r1.var_B1 == 1.0);

    // L = 2: signal side comes from the exact oracle, shifted by A.
    const CanonicalParams pair{100, 2, 2.0};
    const DominanceReport r2 = dominance_report(pair);
    CHECK(r2.mean_B1 == doctest::Approx(pair.amplitude() + 1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-9));
    CHECK(r2.mean_BL == doctest::Approx(pair.amplitude() - 1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-9));

    // L > M - L: S_L does not exist.
    const DominanceReport r3 = dominance_report({10, 6, 1.0});
    CHECK_FALSE(r3.mean_SL.has_value());
    CHECK_FALSE(r3.mean_D.has_value());
    CHECK_FALSE(r3.chebyshev_lower_bound.has_value());

    CHECK_THROWS(dominance_report({2, 1, 1.0}));
    CHECK_THROWS(dominance_report({10, 10, 1.0}));
}

TEST_CASE("leading_order_means reproduce the closed-form leading terms") {
    for (auto c : {CanonicalParams{4096, 8, 2.0}, CanonicalParams{4194304, 92682, 2.0}, CanonicalParams{1000, 31, 0.7}}) {
        const LeadingOrderMeans lo = leading_order_means(c);
        const double a = std::sqrt(c.snr_scale * std::log(double(c.num_positions)) / double(c.num_paths));
        const double ln_noise = std::log(double(c.num_positions - c.num_paths));
        const double ln_l = std::log(double(c.num_paths));
        CHECK(std::abs(lo.mean_S1 - std::sqrt(2.0 * ln_noise)) <= 1e-9);
        CHECK(std::abs(lo.mean_BL - (a + std::sqrt(ln_l / 2.0))) <= 1e-9);
        CHECK(std::abs(lo.mean_SL - (std::sqrt(2.0 * ln_noise) - ln_l / std::sqrt(2.0 * ln_noise))) <= 1e-9);
        CHECK(std::abs(lo.mean_B1 - (a + std::sqrt(2.0 * ln_l))) <= 1e-9);
    }
    CHECK_THROWS(leading_order_means({100, 1, 1.0}));
}

TEST_CASE("prior_condition") {
    PhysicalParams p;
    p.bandwidth = 1.0;
    p.k2 = std::numbers::e;                   // ln(W k2) = 1
    p.delay_spread = 1.0 / std::numbers::ln2;  // W T_d = 1/ln 2
    p.symbol_time = 1.0;
    p.symbol_energy = 1.0;
    p.k3 = 1.0;
    p.k1 = 0.5;
    p.flash_theta = 1.0;

    auto r = prior_condition(p, 1);
    CHECK(r.rhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(r.holds);
    CHECK(prior_condition(p, 0).holds);

    p.symbol_energy = 2.0;
    CHECK(prior_condition(p, 1).rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(prior_condition(p, 1).holds);

    p.flash_theta = 0.1;  // below the floor k1 / 1
    CHECK_THROWS_AS(prior_condition(p, 1), ParameterError);
}
