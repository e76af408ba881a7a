// random.hpp - explicit random streams and counter-style seed derivation
//
// Every stochastic operation takes a RandomStream by reference. Streams for
// concurrent trials are derived from (seed, index...) with a SplitMix64
// mixer, so results never depend on which thread ran which trial.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace ppmsync {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic child seed from a parent seed and a sequence of counters.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> counters) noexcept;

class RandomStream {
public:
    using engine_type = std::mt19937_64;

    explicit RandomStream(std::uint64_t seed) : engine_(mix64(seed)), seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    /// Standard normal draw (ziggurat).
    double gaussian() { return normal_(engine_); }

    /// Uniform integer in [lo, hi].
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return boost::random::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
    }

    engine_type& engine() noexcept { return engine_; }

private:
    engine_type engine_;
    boost::random::normal_distribution<double> normal_{0.0, 1.0};
    std::uint64_t seed_;
};

}  // namespace ppmsync
