#include "ppmsync/export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ppmsync {

namespace {

using nlohmann::json;

std::string real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string real_or_na(const std::optional<double>& v) { return v ? real(*v) : "NA"; }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

std::string to_csv(const SweepResult& r) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& p : r.points) {
        for (const auto& d : p.detectors) {
            const Interval zc = d.zero_capture_interval();
            const Interval ms = d.miss_interval();
            const Interval cf = d.capture_interval();
            out += std::to_string(p.params.num_positions) + ',' + std::to_string(p.params.num_paths) + ',' +
                   real(p.params.snr_scale) + ',' + real(p.amplitude) + ',' + std::to_string(p.trials) + ',' +
                   to_string(d.detector) + ',' + real(d.zero_capture_rate()) + ',' + real(zc.lo) + ',' +
                   real(zc.hi) + ',' + real(d.miss_rate()) + ',' + real(ms.lo) + ',' + real(ms.hi) + ',' +
                   real(d.capture_fraction()) + ',' + real(cf.lo) + ',' + real(cf.hi) + ',' +
                   real_or_na(p.mean_D) + ',' + real_or_na(p.var_D) + ',' + real_or_na(p.chebyshev_bound) +
                   ',' + std::to_string(p.seed_base) + '\n';
        }
    }
    return out;
}

std::string to_json(const SweepResult& r) {
    json points = json::array();
    for (const auto& p : r.points) {
        json detectors = json::array();
        for (const auto& d : p.detectors) {
            const Interval zc = d.zero_capture_interval();
            const Interval ms = d.miss_interval();
            const Interval cf = d.capture_interval();
            detectors.push_back({{"detector", to_string(d.detector)},
                                 {"zero_capture_rate", d.zero_capture_rate()},
                                 {"zero_capture_lo", zc.lo},
                                 {"zero_capture_hi", zc.hi},
                                 {"miss_rate", d.miss_rate()},
                                 {"miss_lo", ms.lo},
                                 {"miss_hi", ms.hi},
                                 {"capture_fraction", d.capture_fraction()},
                                 {"capture_lo", cf.lo},
                                 {"capture_hi", cf.hi},
                                 {"counts",
                                  {{"zero_capture", d.zero_capture_count},
                                   {"miss", d.miss_count},
                                   {"capture_total", d.capture_total},
                                   {"capture_sq_total", d.capture_sq_total}}}});
        }
        points.push_back({{"M", p.params.num_positions},
                          {"L", p.params.num_paths},
                          {"k", p.params.snr_scale},
                          {"A", p.amplitude},
                          {"trials", p.trials},
                          {"mean_D", optional_json(p.mean_D)},
                          {"var_D", optional_json(p.var_D)},
                          {"chebyshev_bound", optional_json(p.chebyshev_bound)},
                          {"seed_base", p.seed_base},
                          {"detectors", detectors}});
    }
    json root{{"master_seed", r.master_seed}, {"points", points}};
    return root.dump(2) + "\n";
}

SweepResult parse_results_json(const std::string& text) {
    const json root = json::parse(text);
    SweepResult r;
    r.master_seed = root.at("master_seed").get<std::uint64_t>();
    for (const auto& jp : root.at("points")) {
        PointResult p;
        p.params.num_positions = jp.at("M").get<std::uint64_t>();
        p.params.num_paths = jp.at("L").get<std::uint64_t>();
        p.params.snr_scale = jp.at("k").get<double>();
        p.amplitude = jp.at("A").get<double>();
        p.trials = jp.at("trials").get<std::uint64_t>();
        p.mean_D = optional_from(jp.at("mean_D"));
        p.var_D = optional_from(jp.at("var_D"));
        p.chebyshev_bound = optional_from(jp.at("chebyshev_bound"));
        p.seed_base = jp.at("seed_base").get<std::uint64_t>();
        for (const auto& jd : jp.at("detectors")) {
            DetectorStats d;
            d.detector = parse_detector(jd.at("detector").get<std::string>());
            d.trials = p.trials;
            d.num_paths = p.params.num_paths;
            const auto& counts = jd.at("counts");
            d.zero_capture_count = counts.at("zero_capture").get<std::uint64_t>();
            d.miss_count = counts.at("miss").get<std::uint64_t>();
            d.capture_total = counts.at("capture_total").get<std::uint64_t>();
            d.capture_sq_total = counts.at("capture_sq_total").get<std::uint64_t>();
            p.detectors.push_back(d);
        }
        r.points.push_back(std::move(p));
    }
    return r;
}

void export_results(const SweepResult& r, const std::string& path, OutputFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << (format == OutputFormat::csv ? to_csv(r) : to_json(r));
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace ppmsync
