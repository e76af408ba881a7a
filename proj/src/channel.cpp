#include "ppmsync/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ppmsync {

namespace {

constexpr std::size_t kDenseLimit = 1u << 16;

}  // namespace

std::vector<std::size_t> uniform_subset(std::size_t population, std::size_t count, RandomStream& rng) {
    if (count > population) {
        throw std::invalid_argument("uniform_subset: count " + std::to_string(count) +
                                    " exceeds population " + std::to_string(population));
    }
    std::vector<std::size_t> out(count);
    if (count == 0) return out;

    // Both branches perform the same swaps for the same draws.
    if (population <= kDenseLimit || population <= 4 * count) {
        std::vector<std::size_t> perm(population);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = 0; i < count; ++i) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(i, population - 1));
            std::swap(perm[i], perm[j]);
        }
        std::copy_n(perm.begin(), count, out.begin());
    } else {
        std::unordered_map<std::size_t, std::size_t> swapped;
        swapped.reserve(2 * count);
        auto at = [&](std::size_t k) {
            auto it = swapped.find(k);
            return it == swapped.end() ? k : it->second;
        };
        for (std::size_t i = 0; i < count; ++i) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(i, population - 1));
            const std::size_t vi = at(i);
            const std::size_t vj = at(j);
            swapped[i] = vj;
            swapped[j] = vi;
            out[i] = vj;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ChannelRealization sample_channel(const CanonicalParams& c, RandomStream& rng) {
    c.check();
    const auto m = static_cast<std::size_t>(c.num_positions);
    const auto l = static_cast<std::size_t>(c.num_paths);
    ChannelRealization ch;
    ch.delays = uniform_subset(m, l, rng);
    ch.gains.assign(l, 1.0 / std::sqrt(static_cast<double>(l)));
    return ch;
}

void synthesize_observation_into(const ChannelRealization& ch, const CanonicalParams& c,
                                 RandomStream& rng, bool noise_enabled, Observation& out) {
    c.check();
    const auto m = static_cast<std::size_t>(c.num_positions);
    if (ch.num_paths() != c.num_paths) {
        throw std::invalid_argument("synthesize_observation: realization has " +
                                    std::to_string(ch.num_paths()) + " paths, params expect " +
                                    std::to_string(c.num_paths));
    }
    if (!ch.delays.empty() && ch.delays.back() >= m) {
        throw std::invalid_argument("synthesize_observation: delay outside [0, M-1]");
    }
    const double amplitude = c.amplitude();

    out.samples.resize(m);
    if (noise_enabled) {
        for (auto& y : out.samples) y = rng.gaussian();
    } else {
        std::fill(out.samples.begin(), out.samples.end(), 0.0);
    }
    for (auto d : ch.delays) out.samples[d] += amplitude;
    out.truth = ch;
}

Observation synthesize_observation(const ChannelRealization& ch, const CanonicalParams& c,
                                   RandomStream& rng, bool noise_enabled) {
    Observation obs;
    synthesize_observation_into(ch, c, rng, noise_enabled, obs);
    return obs;
}

}  // namespace ppmsync
