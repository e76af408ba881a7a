// sweep.hpp - Monte Carlo sweeps over the growth regimes
//
// Each trial runs sample_channel -> synthesize_observation -> detector(s) ->
// evaluate_trial. Trial t of a point draws from streams derived from
// (seed_base, t), and seed_base from (master_seed, point_index), so a sweep
// is a pure function of its configuration. Aggregates are integer counts, so
// the merge order across workers cannot change any output bit.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppmsync/interval.hpp"
#include "ppmsync/params.hpp"

namespace ppmsync {

enum class Detector { ml, random };

std::string to_string(Detector d);
Detector parse_detector(const std::string& name);

struct DetectorStats {
    Detector detector = Detector::ml;
    std::uint64_t trials = 0;
    std::uint64_t num_paths = 0;
    std::uint64_t zero_capture_count = 0;
    std::uint64_t miss_count = 0;
    std::uint64_t capture_total = 0;     // sum of per-trial capture counts
    std::uint64_t capture_sq_total = 0;  // sum of squared capture counts

    double zero_capture_rate() const;
    double miss_rate() const;
    double capture_fraction() const;
    /// Standard error of the mean per-trial capture fraction.
    double capture_fraction_se() const;

    Interval zero_capture_interval() const;
    Interval miss_interval() const;
    /// Wilson interval on the mean capture fraction with n = trials.
    Interval capture_interval() const;

    friend bool operator==(const DetectorStats&, const DetectorStats&) = default;
};

struct PointResult {
    CanonicalParams params;
    double amplitude = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed_base = 0;
    std::vector<DetectorStats> detectors;
    // From dominance_report; absent where the report does not apply.
    std::optional<double> mean_D;
    std::optional<double> var_D;
    std::optional<double> chebyshev_bound;

    const DetectorStats& stats(Detector d) const;

    friend bool operator==(const PointResult&, const PointResult&) = default;
};

struct SweepResult {
    std::uint64_t master_seed = 0;
    std::vector<PointResult> points;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct RunOptions {
    unsigned workers = 1;        // 0 selects std::thread::hardware_concurrency()
    bool noise_enabled = true;   // off only in tests
};

PointResult run_point(const CanonicalParams& c, std::uint64_t trials, std::uint64_t seed_base,
                      const std::vector<Detector>& detectors, const RunOptions& options = {});

enum class SweepMode { canonical, physical };
enum class OutputFormat { csv, json };

struct SweepConfig {
    SweepMode mode = SweepMode::canonical;
    // canonical mode: a regime or an explicit list of points
    std::optional<RegimeSpec> regime;
    std::vector<CanonicalParams> points;
    // physical mode: one point per path count
    std::optional<PhysicalParams> physical;
    std::vector<std::uint64_t> path_counts;

    std::uint64_t trials = 2000;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;  // 0 = auto
    std::vector<Detector> detectors{Detector::ml};
    std::string output_path;
    OutputFormat output_format = OutputFormat::csv;
};

/// Throws ParameterError naming the first offending field.
void validate_config(const SweepConfig& cfg);

/// Sweep points in configured order.
std::vector<CanonicalParams> sweep_points(const SweepConfig& cfg);

std::uint64_t point_seed(std::uint64_t master_seed, std::uint64_t point_index);

SweepResult run_sweep(const SweepConfig& cfg, bool noise_enabled = true);

}  // namespace ppmsync
