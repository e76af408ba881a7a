#include <doctest.h>

#include <cmath>
#include <random>

#include "ppmsync/params.hpp"

using namespace ppmsync;

namespace {

// W k2 = e^2 so the flash floor is k1 / 2.
PhysicalParams base_params() {
    PhysicalParams p;
    p.bandwidth = 1e9;
    p.symbol_time = 1e-6;
    p.delay_spread = 1e-7;
    p.symbol_energy = 4.0;
    p.flash_theta = 0.6;
    p.k1 = 1.0;
    p.k2 = std::exp(2.0) / 1e9;
    p.k3 = 1.0;
    return p;
}

}  // namespace

TEST_CASE("validate_physical: flash floor") {
    PhysicalParams p = base_params();
    ValidationReport r = validate_physical(p);
    CHECK(r.passed);
    CHECK(r.theta_floor == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.num_pulse_positions == 1000);
    CHECK(r.num_positions == 100);

    p.flash_theta = 0.4;
    r = validate_physical(p);
    CHECK_FALSE(r.passed);
    CHECK(r.theta_floor == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.failures() == "flash_floor");
}

TEST_CASE("validate_physical: field errors") {
    PhysicalParams p = base_params();
    p.flash_theta = 0.0;
    try {
        validate_physical(p);
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(e.field() == "flash_theta");
        CHECK(std::string(e.what()) == "flash_theta must be in (0,1]");
    }

    p = base_params();
    p.flash_theta = 1.5;
    CHECK_THROWS_AS(validate_physical(p), ParameterError);

    p = base_params();
    p.bandwidth = -1.0;
    try {
        validate_physical(p);
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(e.field() == "bandwidth");
    }

    p = base_params();
    p.k3 = 0.0;
    CHECK_THROWS_AS(validate_physical(p), ParameterError);
}

TEST_CASE("validate_physical: position counts round half up") {
    PhysicalParams p = base_params();
    p.delay_spread = 0.4e-9;  // W T_d = 0.4 -> M = 0
    ValidationReport r = validate_physical(p);
    CHECK_FALSE(r.passed);
    CHECK(r.num_positions == 0);

    CHECK(round_half_up(2.5) == 3);
    CHECK(round_half_up(2.49) == 2);
    CHECK(round_half_up(0.5) == 1);
}

TEST_CASE("validate_physical is monotone in theta") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(1e-3, 1.0);
    PhysicalParams p = base_params();
    for (int i = 0; i < 500; ++i) {
        const double a = unit(gen);
        const double b = unit(gen);
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        p.flash_theta = lo;
        const bool lo_passes = validate_physical(p).passed;
        p.flash_theta = hi;
        if (lo_passes) CHECK(validate_physical(p).passed);
    }
}

TEST_CASE("to_canonical: amplitude agrees across parameterizations") {
    PhysicalParams p = base_params();
    p.symbol_energy = 4.0;
    p.flash_theta = 0.6;
    p.k1 = 1.0;

    // E = 4, theta = 0.25, L = 4 -> A = 2 (needs a floor below 0.25).
    p.flash_theta = 0.25;
    p.k1 = 0.25;
    CHECK(physical_amplitude(p, 4) == doctest::Approx(2.0).epsilon(1e-15));
    const CanonicalParams c = to_canonical(p, 4);
    CHECK(c.num_positions == 100);
    CHECK(c.num_paths == 4);
    CHECK(c.snr_scale == doctest::Approx(4.0 / (0.25 * std::log(100.0))).epsilon(1e-14));
    CHECK(std::abs(c.amplitude() - 2.0) <= 1e-12 * 2.0);
}

TEST_CASE("to_canonical: randomized amplitude identity") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> energy(0.1, 50.0);
    std::uniform_real_distribution<double> theta(0.3, 1.0);
    std::uniform_int_distribution<int> spread(2, 100000);
    std::uniform_int_distribution<int> paths(1, 64);
    for (int i = 0; i < 1000; ++i) {
        PhysicalParams p = base_params();
        p.symbol_energy = energy(gen);
        p.flash_theta = theta(gen);
        p.k1 = 0.1;
        p.delay_spread = spread(gen) / p.bandwidth;
        const auto l = static_cast<std::uint64_t>(paths(gen));
        const double direct = physical_amplitude(p, l);
        const double canonical = to_canonical(p, l).amplitude();
        CHECK(std::abs(direct - canonical) <= 1e-12 * direct);
    }
}

TEST_CASE("to_canonical: errors") {
    PhysicalParams p = base_params();
    p.flash_theta = 0.4;  // below floor
    CHECK_THROWS_AS(to_canonical(p, 2), ParameterError);

    p = base_params();
    p.delay_spread = 1.2e-9;  // M = 1
    CHECK_THROWS_AS(to_canonical(p, 1), ParameterError);

    p = base_params();
    CHECK_THROWS_AS(to_canonical(p, 101), ParameterError);  // L > M
}

TEST_CASE("canonical amplitude") {
    // k = 4, M = round(e^4) = 55, L = 2 -> sqrt(2 ln 55).
    const CanonicalParams c{55, 2, 4.0};
    CHECK(c.amplitude() == doctest::Approx(2.8310189).epsilon(1e-7));
    CHECK(c.amplitude() == doctest::Approx(std::sqrt(4.0 * std::log(55.0) / 2.0)).epsilon(1e-15));

    CHECK_THROWS_AS((CanonicalParams{1, 1, 1.0}.amplitude()), ParameterError);
    CHECK_THROWS_AS((CanonicalParams{4, 5, 1.0}.check()), ParameterError);
    CHECK_THROWS_AS((CanonicalParams{4, 0, 1.0}.check()), ParameterError);
    CHECK_THROWS_AS((CanonicalParams{4, 2, 0.0}.check()), ParameterError);
}

TEST_CASE("expand_regime") {
    CHECK(expand_regime({0.25, {4096}, 2.0}).front().num_paths == 8);
    CHECK(expand_regime({0.75, {4096}, 2.0}).front().num_paths == 512);
    CHECK(expand_regime({1.0, {16}, 2.0}).front().num_paths == 16);

    const auto pts = expand_regime({0.25, {1024, 16384, 262144, 4194304}, 2.0});
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].num_paths == 6);
    CHECK(pts[1].num_paths == 12);
    CHECK(pts[2].num_paths == 23);
    CHECK(pts[3].num_paths == 46);
    for (const auto& p : pts) {
        CHECK(p.num_paths >= 1);
        CHECK(p.num_paths <= p.num_positions);
        CHECK(p.snr_scale == 2.0);
    }
    CHECK(expand_regime({0.75, {4194304}, 2.0}).front().num_paths == 92682);

    CHECK_THROWS_AS(expand_regime({0.5, {}, 2.0}), ParameterError);
    CHECK_THROWS_AS(expand_regime({0.5, {64, 64}, 2.0}), ParameterError);
    CHECK_THROWS_AS(expand_regime({0.5, {64, 32}, 2.0}), ParameterError);
    CHECK_THROWS_AS(expand_regime({0.0, {64}, 2.0}), ParameterError);
    CHECK_THROWS_AS(expand_regime({1.5, {64}, 2.0}), ParameterError);
}

TEST_CASE("expand_regime: lengths and bounds over random ladders") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> expo(0.01, 1.0);
    std::uniform_int_distribution<std::uint64_t> step(1, 5000);
    for (int i = 0; i < 200; ++i) {
        RegimeSpec r{expo(gen), {}, 1.0};
        std::uint64_t m = 0;
        for (int j = 0; j < 6; ++j) r.ladder.push_back(m += step(gen));
        const auto pts = expand_regime(r);
        CHECK(pts.size() == r.ladder.size());
        for (std::size_t j = 0; j < pts.size(); ++j) {
            CHECK(pts[j].num_positions == r.ladder[j]);
            CHECK(pts[j].num_paths >= 1);
            CHECK(pts[j].num_paths <= pts[j].num_positions);
        }
    }
}
