#include "ppmsync/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ppmsync/channel.hpp"
#include "ppmsync/detect.hpp"
#include "ppmsync/order_stats.hpp"
#include "ppmsync/random.hpp"

namespace ppmsync {

std::string to_string(Detector d) {
    switch (d) {
        case Detector::ml: return "ml";
        case Detector::random: return "random";
    }
    return "unknown";
}

Detector parse_detector(const std::string& name) {
    if (name == "ml") return Detector::ml;
    if (name == "random") return Detector::random;
    throw ParameterError("detectors", "unknown detector '" + name + "' (expected ml or random)");
}

double DetectorStats::zero_capture_rate() const {
    return trials ? static_cast<double>(zero_capture_count) / static_cast<double>(trials) : 0.0;
}

double DetectorStats::miss_rate() const {
    return trials ? static_cast<double>(miss_count) / static_cast<double>(trials) : 0.0;
}

double DetectorStats::capture_fraction() const {
    if (trials == 0 || num_paths == 0) return 0.0;
    return static_cast<double>(capture_total) /
           (static_cast<double>(trials) * static_cast<double>(num_paths));
}

double DetectorStats::capture_fraction_se() const {
    if (trials < 2 || num_paths == 0) return 0.0;
    const double n = static_cast<double>(trials);
    const double l = static_cast<double>(num_paths);
    const double mean = static_cast<double>(capture_total) / n;
    const double var =
        std::max(0.0, (static_cast<double>(capture_sq_total) - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n) / l;
}

Interval DetectorStats::zero_capture_interval() const {
    return wilson_interval(static_cast<double>(zero_capture_count), static_cast<double>(trials));
}

Interval DetectorStats::miss_interval() const {
    return wilson_interval(static_cast<double>(miss_count), static_cast<double>(trials));
}

Interval DetectorStats::capture_interval() const {
    const double n = static_cast<double>(trials);
    return wilson_interval(std::min(n, capture_fraction() * n), n);
}

const DetectorStats& PointResult::stats(Detector d) const {
    for (const auto& s : detectors) {
        if (s.detector == d) return s;
    }
    throw std::out_of_range("point has no results for detector " + to_string(d));
}

namespace {

void accumulate(DetectorStats& s, const TrialResult& t) {
    s.zero_capture_count += t.zero_capture ? 1 : 0;
    s.miss_count += t.any_miss ? 1 : 0;
    s.capture_total += t.capture_count;
    s.capture_sq_total += static_cast<std::uint64_t>(t.capture_count) * t.capture_count;
}

void merge(DetectorStats& into, const DetectorStats& from) {
    into.zero_capture_count += from.zero_capture_count;
    into.miss_count += from.miss_count;
    into.capture_total += from.capture_total;
    into.capture_sq_total += from.capture_sq_total;
}

std::string describe(const CanonicalParams& c) {
    return "M=" + std::to_string(c.num_positions) + " L=" + std::to_string(c.num_paths);
}

}  // namespace

PointResult run_point(const CanonicalParams& c, std::uint64_t trials, std::uint64_t seed_base,
                      const std::vector<Detector>& detectors, const RunOptions& options) {
    c.check();
    if (trials < 1) throw ParameterError("trials", "trials must be >= 1");
    if (detectors.empty()) throw ParameterError("detectors", "at least one detector is required");

    PointResult point;
    point.params = c;
    point.amplitude = c.amplitude();
    point.trials = trials;
    point.seed_base = seed_base;
    for (auto d : detectors) point.detectors.push_back({d, trials, c.num_paths, 0, 0, 0, 0});
    const std::vector<DetectorStats> empty_stats = point.detectors;

    unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex merge_mutex;
    std::exception_ptr error;
    std::uint64_t error_trial = 0;

    auto work = [&]() {
        std::vector<DetectorStats> local = empty_stats;
        Observation obs;
        const auto m = static_cast<std::size_t>(c.num_positions);
        const auto l = static_cast<std::size_t>(c.num_paths);
        std::uint64_t t = 0;
        try {
            while (!failed.load(std::memory_order_relaxed)) {
                t = next.fetch_add(1, std::memory_order_relaxed);
                if (t >= trials) break;
                RandomStream channel_rng(derive_seed(seed_base, {t, 0}));
                const ChannelRealization ch = sample_channel(c, channel_rng);
                synthesize_observation_into(ch, c, channel_rng, options.noise_enabled, obs);
                std::optional<ObservationExtremes> ext;
                if (l < m) ext = observation_extremes(obs);
                for (std::size_t i = 0; i < detectors.size(); ++i) {
                    SyncEstimate est;
                    if (detectors[i] == Detector::ml) {
                        est = ml_synchronize(obs, l);
                    } else {
                        RandomStream pick_rng(derive_seed(seed_base, {t, 1}));
                        est = random_baseline(m, l, pick_rng);
                    }
                    accumulate(local[i], ext ? evaluate_trial(obs, est, *ext) : evaluate_trial(obs, est));
                }
            }
        } catch (...) {
            std::lock_guard lock(merge_mutex);
            if (!error) {
                error = std::current_exception();
                error_trial = t;
            }
            failed = true;
            return;
        }
        std::lock_guard lock(merge_mutex);
        for (std::size_t i = 0; i < local.size(); ++i) merge(point.detectors[i], local[i]);
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const std::exception& e) {
            throw std::runtime_error("point " + describe(c) + ", trial " + std::to_string(error_trial) +
                                     ": " + e.what());
        }
    }

    if (c.num_positions >= 3 && c.num_paths < c.num_positions) {
        const DominanceReport report = dominance_report(c);
        point.mean_D = report.mean_D;
        point.var_D = report.var_D;
        point.chebyshev_bound = report.chebyshev_lower_bound;
    }
    return point;
}

void validate_config(const SweepConfig& cfg) {
    if (cfg.trials < 1) throw ParameterError("trials", "trials must be >= 1");
    if (cfg.detectors.empty()) throw ParameterError("detectors", "at least one detector is required");
    for (std::size_t i = 0; i < cfg.detectors.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (cfg.detectors[i] == cfg.detectors[j]) {
                throw ParameterError("detectors", "duplicate detector " + to_string(cfg.detectors[i]));
            }
        }
    }
    if (cfg.mode == SweepMode::canonical) {
        if (cfg.regime && !cfg.points.empty()) {
            throw ParameterError("points", "give either a regime or explicit points, not both");
        }
        if (!cfg.regime && cfg.points.empty()) {
            throw ParameterError("points", "canonical mode needs a regime or at least one point");
        }
        if (cfg.physical || !cfg.path_counts.empty()) {
            throw ParameterError("mode", "physical parameters given in canonical mode");
        }
        if (cfg.regime) {
            (void)expand_regime(*cfg.regime);
        }
        for (const auto& p : cfg.points) {
            p.check();
            (void)p.amplitude();
        }
    } else {
        if (!cfg.physical) throw ParameterError("mode", "physical mode needs physical parameters");
        if (cfg.regime || !cfg.points.empty()) {
            throw ParameterError("mode", "canonical points given in physical mode");
        }
        if (cfg.path_counts.empty()) throw ParameterError("paths", "physical mode needs at least one path count");
        for (auto l : cfg.path_counts) (void)to_canonical(*cfg.physical, l);
    }
}

std::vector<CanonicalParams> sweep_points(const SweepConfig& cfg) {
    validate_config(cfg);
    if (cfg.mode == SweepMode::physical) {
        std::vector<CanonicalParams> out;
        for (auto l : cfg.path_counts) out.push_back(to_canonical(*cfg.physical, l));
        return out;
    }
    if (cfg.regime) return expand_regime(*cfg.regime);
    return cfg.points;
}

std::uint64_t point_seed(std::uint64_t master_seed, std::uint64_t point_index) {
    return derive_seed(master_seed, {point_index});
}

SweepResult run_sweep(const SweepConfig& cfg, bool noise_enabled) {
    const std::vector<CanonicalParams> points = sweep_points(cfg);
    SweepResult result;
    result.master_seed = cfg.master_seed;
    result.points.reserve(points.size());
    const RunOptions options{cfg.workers, noise_enabled};
    for (std::size_t i = 0; i < points.size(); ++i) {
        result.points.push_back(
            run_point(points[i], cfg.trials, point_seed(cfg.master_seed, i), cfg.detectors, options));
    }
    return result;
}

}  // namespace ppmsync
