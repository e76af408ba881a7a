// detect.hpp - multipath synchronizers and per-trial scoring
//
// With equal path gains the maximum-likelihood correlator argmax_i s_i^T Y
// reduces to picking the L largest samples. brute_force_correlator keeps the
// exhaustive form as an oracle for small problems.

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppmsync/channel.hpp"
#include "ppmsync/random.hpp"

namespace ppmsync {

struct SyncEstimate {
    std::vector<std::size_t> positions;  // sorted, distinct
    double score = 0.0;                  // sum of the observation at `positions`
};

struct TrialResult {
    std::size_t capture_count = 0;
    bool zero_capture = false;
    bool any_miss = false;
    bool event_SL_gt_B1 = false;  // L-th largest noise sample beats the largest signal sample
    bool event_S1_gt_BL = false;  // largest noise sample beats the smallest signal sample
};

/// Largest enumeration brute_force_correlator accepts.
inline constexpr double kMaxCorrelatorHypotheses = 1e6;

/// Indices of the `count` largest values, ties to the lowest index, sorted
/// ascending. Bounded heap for small counts, linear-time selection otherwise.
std::vector<std::size_t> top_indices(const std::vector<double>& values, std::size_t count);

SyncEstimate ml_synchronize(const Observation& obs, std::size_t num_paths);

/// Exhaustive search over all C(M, L) hypotheses; the lexicographically
/// smallest maximizer wins.
SyncEstimate brute_force_correlator(const Observation& obs, std::size_t num_paths);

/// Uniform L-subset independent of the samples. The score is left at zero;
/// use score_positions when it is needed.
SyncEstimate random_baseline(std::size_t num_positions, std::size_t num_paths, RandomStream& rng);

double score_positions(const Observation& obs, const std::vector<std::size_t>& positions);

/// Size of the intersection of two sorted index sets.
std::size_t overlap(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

/// Extremes of the signal and noise positions of one observation. S_L is
/// absent when there are fewer than L noise positions.
struct ObservationExtremes {
    double b_max = 0.0;  // largest signal sample
    double b_min = 0.0;  // smallest signal sample
    double s_max = 0.0;  // largest noise sample
    std::optional<double> s_l;
};

/// Needs ground truth with 0 < L < M.
ObservationExtremes observation_extremes(const Observation& obs);

/// Capture counts come from `est`; the two order-statistic events come from
/// the observation and its ground truth only.
TrialResult evaluate_trial(const Observation& obs, const SyncEstimate& est);

/// Same, reusing extremes already computed for `obs` (several detectors per
/// observation).
TrialResult evaluate_trial(const Observation& obs, const SyncEstimate& est, const ObservationExtremes& ext);

}  // namespace ppmsync
