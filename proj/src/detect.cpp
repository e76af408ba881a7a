#include "ppmsync/detect.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace ppmsync {

namespace {

struct Ranked {
    double value;
    std::size_t index;
};

// Heap order whose front is the worst retained entry.
bool ranks_higher(const Ranked& a, const Ranked& b) {
    return a.value > b.value || (a.value == b.value && a.index < b.index);
}

void check_count(std::size_t m, std::size_t l, const char* who) {
    if (l > m) {
        throw std::invalid_argument(std::string(who) + ": L = " + std::to_string(l) +
                                    " exceeds M = " + std::to_string(m));
    }
}

// Above this many retained values a heap scan loses to linear-time selection.
constexpr std::size_t kHeapSelectLimit = 4096;

// count-th largest entry (1-based) of `scratch`, which is reordered.
double kth_largest(std::vector<double>& scratch, std::size_t count) {
    const auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(count - 1);
    std::nth_element(scratch.begin(), nth, scratch.end(), std::greater<>());
    return *nth;
}

double log_binomial(std::size_t n, std::size_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

std::vector<std::size_t> top_indices(const std::vector<double>& values, std::size_t count) {
    check_count(values.size(), count, "top_indices");
    std::vector<std::size_t> out;
    if (count == 0) return out;

    if (count > kHeapSelectLimit) {
        std::vector<double> scratch(values);
        const double threshold = kth_largest(scratch, count);
        std::size_t above = 0;
        for (double v : values) above += v > threshold ? 1 : 0;
        // Ties at the threshold go to the lowest indices.
        std::size_t ties_left = count - above;
        out.reserve(count);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] > threshold) {
                out.push_back(i);
            } else if (values[i] == threshold && ties_left > 0) {
                out.push_back(i);
                --ties_left;
            }
        }
        return out;
    }

    std::vector<Ranked> heap;
    heap.reserve(count);
    for (std::size_t i = 0; i < count; ++i) heap.push_back({values[i], i});
    std::make_heap(heap.begin(), heap.end(), ranks_higher);
    for (std::size_t i = count; i < values.size(); ++i) {
        // Later indices lose ties, so only a strictly larger value displaces.
        if (values[i] > heap.front().value) {
            std::pop_heap(heap.begin(), heap.end(), ranks_higher);
            heap.back() = {values[i], i};
            std::push_heap(heap.begin(), heap.end(), ranks_higher);
        }
    }
    out.reserve(count);
    for (const auto& r : heap) out.push_back(r.index);
    std::sort(out.begin(), out.end());
    return out;
}

double score_positions(const Observation& obs, const std::vector<std::size_t>& positions) {
    double s = 0.0;
    for (auto p : positions) {
        if (p >= obs.size()) throw std::out_of_range("score_positions: position outside observation");
        s += obs.samples[p];
    }
    return s;
}

SyncEstimate ml_synchronize(const Observation& obs, std::size_t num_paths) {
    check_count(obs.size(), num_paths, "ml_synchronize");
    SyncEstimate est;
    est.positions = top_indices(obs.samples, num_paths);
    est.score = score_positions(obs, est.positions);
    return est;
}

SyncEstimate brute_force_correlator(const Observation& obs, std::size_t num_paths) {
    const std::size_t m = obs.size();
    check_count(m, num_paths, "brute_force_correlator");
    if (log_binomial(m, num_paths) > std::log(kMaxCorrelatorHypotheses) + 1e-9) {
        throw std::invalid_argument("brute_force_correlator: C(" + std::to_string(m) + ", " +
                                    std::to_string(num_paths) +
                                    ") hypotheses exceed the enumeration limit; use ml_synchronize");
    }

    // Lexicographic enumeration of index combinations.
    std::vector<std::size_t> combo(num_paths);
    for (std::size_t i = 0; i < num_paths; ++i) combo[i] = i;

    SyncEstimate best;
    best.score = -std::numeric_limits<double>::infinity();
    bool first = true;
    while (true) {
        const double s = score_positions(obs, combo);
        if (first || s > best.score) {
            best.positions = combo;
            best.score = s;
            first = false;
        }
        std::size_t i = num_paths;
        while (i > 0 && combo[i - 1] == m - num_paths + (i - 1)) --i;
        if (i == 0) break;
        ++combo[i - 1];
        for (std::size_t j = i; j < num_paths; ++j) combo[j] = combo[j - 1] + 1;
    }
    return best;
}

SyncEstimate random_baseline(std::size_t num_positions, std::size_t num_paths, RandomStream& rng) {
    check_count(num_positions, num_paths, "random_baseline");
    SyncEstimate est;
    est.positions = uniform_subset(num_positions, num_paths, rng);
    return est;
}

std::size_t overlap(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

ObservationExtremes observation_extremes(const Observation& obs) {
    if (!obs.truth) throw std::invalid_argument("observation_extremes: observation carries no ground truth");
    const auto& delays = obs.truth->delays;
    const std::size_t m = obs.size();
    const std::size_t l = delays.size();
    if (l == 0 || l >= m) throw std::invalid_argument("observation_extremes: requires 0 < L < M");

    ObservationExtremes ext;
    ext.b_max = -std::numeric_limits<double>::infinity();
    ext.b_min = std::numeric_limits<double>::infinity();
    for (auto d : delays) {
        ext.b_max = std::max(ext.b_max, obs.samples[d]);
        ext.b_min = std::min(ext.b_min, obs.samples[d]);
    }

    const std::size_t noise_count = m - l;
    const std::size_t keep = std::min(l, noise_count);
    double s_max = -std::numeric_limits<double>::infinity();
    auto for_each_noise = [&](auto&& f) {
        auto next_delay = delays.begin();
        for (std::size_t i = 0; i < m; ++i) {
            if (next_delay != delays.end() && *next_delay == i) {
                ++next_delay;
                continue;
            }
            f(obs.samples[i]);
        }
    };

    double kth = 0.0;
    if (keep > kHeapSelectLimit) {
        std::vector<double> noise;
        noise.reserve(noise_count);
        for_each_noise([&](double v) {
            s_max = std::max(s_max, v);
            noise.push_back(v);
        });
        kth = kth_largest(noise, keep);
    } else {
        // `keep` largest noise values; front() of the min-heap is the smallest of them.
        std::vector<double> heap;
        heap.reserve(keep);
        for_each_noise([&](double v) {
            s_max = std::max(s_max, v);
            if (heap.size() < keep) {
                heap.push_back(v);
                std::push_heap(heap.begin(), heap.end(), std::greater<>());
            } else if (v > heap.front()) {
                std::pop_heap(heap.begin(), heap.end(), std::greater<>());
                heap.back() = v;
                std::push_heap(heap.begin(), heap.end(), std::greater<>());
            }
        });
        kth = heap.front();
    }
    ext.s_max = s_max;
    if (noise_count >= l) ext.s_l = kth;
    return ext;
}

namespace {

TrialResult capture_result(const Observation& obs, const SyncEstimate& est) {
    if (!obs.truth) throw std::invalid_argument("evaluate_trial: observation carries no ground truth");
    const std::size_t m = obs.size();
    for (auto p : est.positions) {
        if (p >= m) throw std::out_of_range("evaluate_trial: estimate position outside [0, M-1]");
    }
    TrialResult r;
    r.capture_count = overlap(est.positions, obs.truth->delays);
    r.zero_capture = r.capture_count == 0;
    r.any_miss = r.capture_count < obs.truth->delays.size();
    return r;
}

}  // namespace

TrialResult evaluate_trial(const Observation& obs, const SyncEstimate& est, const ObservationExtremes& ext) {
    TrialResult r = capture_result(obs, est);
    r.event_S1_gt_BL = ext.s_max > ext.b_min;
    // Fewer than L noise positions: S_L does not exist and the event cannot occur.
    r.event_SL_gt_B1 = ext.s_l && *ext.s_l > ext.b_max;
    return r;
}

TrialResult evaluate_trial(const Observation& obs, const SyncEstimate& est) {
    TrialResult r = capture_result(obs, est);
    const std::size_t l = obs.truth->delays.size();
    if (l == 0 || l == obs.size()) return r;
    return evaluate_trial(obs, est, observation_extremes(obs));
}

}  // namespace ppmsync
