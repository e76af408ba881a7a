// channel.hpp - channel realizations and discrete-time observations
//
// A realization places L equal-gain paths on distinct delays drawn uniformly
// from the C(M, L) subsets of {0, ..., M-1}. The observation is the summed,
// noise-normalized matched-filter output over one coherence period with the
// PPM symbols known:
//
//     Y_i = A * 1{i in delays} + Z_i,   Z_i ~ N(0, 1) i.i.d.,
//     A   = sqrt(k ln M / L).

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppmsync/params.hpp"
#include "ppmsync/random.hpp"

namespace ppmsync {

struct ChannelRealization {
    std::vector<std::size_t> delays;  // sorted, distinct, in [0, M-1]
    std::vector<double> gains;        // all 1/sqrt(L)

    std::size_t num_paths() const noexcept { return delays.size(); }

    friend bool operator==(const ChannelRealization&, const ChannelRealization&) = default;
};

struct Observation {
    std::vector<double> samples;
    std::optional<ChannelRealization> truth;

    std::size_t size() const noexcept { return samples.size(); }
};

/// Uniformly random `count`-subset of {0, ..., population-1}, sorted.
/// Partial Fisher-Yates with a sparse swap table when population >> count.
std::vector<std::size_t> uniform_subset(std::size_t population, std::size_t count, RandomStream& rng);

ChannelRealization sample_channel(const CanonicalParams& c, RandomStream& rng);

/// Fills `out` in place so callers can reuse the sample buffer across trials.
void synthesize_observation_into(const ChannelRealization& ch, const CanonicalParams& c,
                                 RandomStream& rng, bool noise_enabled, Observation& out);

Observation synthesize_observation(const ChannelRealization& ch, const CanonicalParams& c,
                                   RandomStream& rng, bool noise_enabled = true);

}  // namespace ppmsync
