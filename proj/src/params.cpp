#include "ppmsync/params.hpp"

#include <cmath>
#include <sstream>

namespace ppmsync {

ParameterError::ParameterError(std::string field, const std::string& message)
    : std::invalid_argument(message), field_(std::move(field)) {}

namespace {

void require_positive(double value, const char* field) {
    if (!std::isfinite(value) || value <= 0.0) {
        std::ostringstream os;
        os << field << " must be positive and finite (got " << value << ")";
        throw ParameterError(field, os.str());
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

double CanonicalParams::amplitude() const {
    if (num_positions < 2) {
        throw ParameterError("num_positions", "amplitude requires M >= 2");
    }
    if (num_paths == 0) {
        throw ParameterError("num_paths", "num_paths must be at least 1");
    }
    return std::sqrt(snr_scale * std::log(static_cast<double>(num_positions)) /
                     static_cast<double>(num_paths));
}

void CanonicalParams::check() const {
    if (num_positions == 0) {
        throw ParameterError("num_positions", "num_positions must be at least 1");
    }
    if (num_paths == 0 || num_paths > num_positions) {
        throw ParameterError("num_paths", "num_paths must satisfy 1 <= L <= M (L=" +
                                              std::to_string(num_paths) + ", M=" +
                                              std::to_string(num_positions) + ")");
    }
    require_positive(snr_scale, "snr_scale");
}

std::string ValidationReport::failures() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.passed) continue;
        if (!out.empty()) out += ", ";
        out += c.name;
    }
    return out;
}

std::uint64_t round_half_up(double x) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("round_half_up: value must be finite and non-negative");
    }
    return static_cast<std::uint64_t>(std::floor(x + 0.5));
}

ValidationReport validate_physical(const PhysicalParams& p) {
    require_positive(p.bandwidth, "bandwidth");
    require_positive(p.symbol_time, "symbol_time");
    require_positive(p.delay_spread, "delay_spread");
    require_positive(p.symbol_energy, "symbol_energy");
    if (!std::isfinite(p.flash_theta) || p.flash_theta <= 0.0 || p.flash_theta > 1.0) {
        throw ParameterError("flash_theta", "flash_theta must be in (0,1]");
    }
    require_positive(p.k1, "k1");
    require_positive(p.k2, "k2");
    require_positive(p.k3, "k3");

    ValidationReport report;
    report.num_pulse_positions = round_half_up(p.bandwidth * p.symbol_time);
    report.num_positions = round_half_up(p.bandwidth * p.delay_spread);

    report.checks.push_back({"pulse_positions", report.num_pulse_positions >= 1,
                             "N = round(W*T_s) = " + std::to_string(report.num_pulse_positions)});
    report.checks.push_back({"delay_positions", report.num_positions >= 1,
                             "M = round(W*T_d) = " + std::to_string(report.num_positions)});

    const double log_wk2 = std::log(p.bandwidth * p.k2);
    if (log_wk2 > 0.0) {
        report.theta_floor = p.k1 / log_wk2;
        report.checks.push_back({"flash_floor", p.flash_theta >= report.theta_floor,
                                 "theta = " + format_double(p.flash_theta) + ", floor k1/ln(W*k2) = " +
                                     format_double(report.theta_floor)});
    } else {
        // The floor is undefined when W k2 <= 1.
        report.theta_floor = std::numeric_limits<double>::infinity();
        report.checks.push_back({"flash_floor", false, "W*k2 must exceed 1 for the flash floor"});
    }

    report.passed = true;
    for (const auto& c : report.checks) report.passed = report.passed && c.passed;
    return report;
}

double physical_amplitude(const PhysicalParams& p, std::uint64_t num_paths) {
    if (num_paths == 0) throw ParameterError("num_paths", "num_paths must be at least 1");
    return std::sqrt(p.symbol_energy / (p.flash_theta * static_cast<double>(num_paths)));
}

CanonicalParams to_canonical(const PhysicalParams& p, std::uint64_t num_paths) {
    const ValidationReport report = validate_physical(p);
    if (!report.passed) {
        throw ParameterError(report.failures(), "physical parameters failed validation: " +
                                                    report.failures());
    }
    if (report.num_positions < 2) {
        throw ParameterError("delay_spread", "canonical form requires M = round(W*T_d) >= 2");
    }
    CanonicalParams c;
    c.num_positions = report.num_positions;
    c.num_paths = num_paths;
    c.snr_scale = p.symbol_energy /
                  (p.flash_theta * std::log(static_cast<double>(report.num_positions)));
    c.check();
    return c;
}

std::uint64_t paths_for_exponent(std::uint64_t num_positions, double exponent) {
    const double r = std::pow(static_cast<double>(num_positions), exponent);
    const double nearest = std::round(r);
    if (std::abs(r - nearest) <= 1e-9 * std::max(1.0, r)) {
        return static_cast<std::uint64_t>(nearest);
    }
    return static_cast<std::uint64_t>(std::ceil(r));
}

std::vector<CanonicalParams> expand_regime(const RegimeSpec& r) {
    if (!std::isfinite(r.exponent) || r.exponent <= 0.0 || r.exponent > 1.0) {
        throw ParameterError("exponent", "exponent must be in (0,1]");
    }
    require_positive(r.snr_scale, "k");
    if (r.ladder.empty()) throw ParameterError("ladder", "ladder must be nonempty");
    for (std::size_t i = 1; i < r.ladder.size(); ++i) {
        if (r.ladder[i] <= r.ladder[i - 1]) {
            throw ParameterError("ladder", "ladder must be strictly increasing");
        }
    }

    std::vector<CanonicalParams> out;
    out.reserve(r.ladder.size());
    for (auto m : r.ladder) {
        if (m == 0) throw ParameterError("ladder", "ladder entries must be positive");
        const std::uint64_t l = paths_for_exponent(m, r.exponent);
        if (l > m) {
            throw ParameterError("ladder", "derived L = " + std::to_string(l) + " exceeds M = " +
                                               std::to_string(m));
        }
        out.push_back({m, l, r.snr_scale});
    }
    return out;
}

}  // namespace ppmsync
