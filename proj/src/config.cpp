#include "ppmsync/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <system_error>
#include <vector>

namespace ppmsync {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

template <typename T>
T parse_number(const std::string& field, const std::string& text) {
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ParameterError(field, field + ": cannot parse '" + text + "' as a number");
    }
    return value;
}

std::vector<std::uint64_t> parse_counts(const std::string& field, const std::string& text) {
    std::vector<std::uint64_t> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_number<std::uint64_t>(field, item));
    return out;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "mode",           "regime.exponent",        "regime.ladder",          "regime.k",
        "points",         "physical.bandwidth",     "physical.symbol_time",   "physical.delay_spread",
        "physical.symbol_energy", "physical.flash_theta", "physical.k1",      "physical.k2",
        "physical.k3",    "physical.paths",         "trials",                 "master_seed",
        "worker_count",   "detectors",              "output_path",            "output_format"};
    return keys;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ParameterError("output_format", "output_format must be csv or json (got '" + name + "')");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

SweepConfig parse_config(std::istream& in) {
    std::map<std::string, std::string> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("line " + std::to_string(line_no),
                                 "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_keys().contains(key)) throw ParameterError(key, "unknown configuration key '" + key + "'");
        if (!values.emplace(key, value).second) {
            throw ParameterError(key, "configuration key '" + key + "' given twice");
        }
    }

    auto take = [&](const std::string& key) -> std::optional<std::string> {
        auto it = values.find(key);
        if (it == values.end()) return std::nullopt;
        return it->second;
    };

    SweepConfig cfg;
    if (auto v = take("mode")) {
        if (*v == "canonical") {
            cfg.mode = SweepMode::canonical;
        } else if (*v == "physical") {
            cfg.mode = SweepMode::physical;
        } else {
            throw ParameterError("mode", "mode must be canonical or physical (got '" + *v + "')");
        }
    }

    const bool any_regime = take("regime.exponent") || take("regime.ladder") || take("regime.k");
    if (any_regime) {
        RegimeSpec r;
        auto need = [&](const std::string& key) {
            auto v = take(key);
            if (!v) throw ParameterError(key, "missing " + key + " (regime needs exponent, ladder and k)");
            return *v;
        };
        r.exponent = parse_number<double>("regime.exponent", need("regime.exponent"));
        r.ladder = parse_counts("regime.ladder", need("regime.ladder"));
        r.snr_scale = parse_number<double>("regime.k", need("regime.k"));
        cfg.regime = r;
    }

    if (auto v = take("points")) {
        for (const auto& item : split(*v, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() != 3) throw ParameterError("points", "points entries must be M:L:k (got '" + item + "')");
            cfg.points.push_back({parse_number<std::uint64_t>("points", parts[0]),
                                  parse_number<std::uint64_t>("points", parts[1]),
                                  parse_number<double>("points", parts[2])});
        }
    }

    static const std::vector<std::pair<std::string, double PhysicalParams::*>> physical_fields{
        {"physical.bandwidth", &PhysicalParams::bandwidth},
        {"physical.symbol_time", &PhysicalParams::symbol_time},
        {"physical.delay_spread", &PhysicalParams::delay_spread},
        {"physical.symbol_energy", &PhysicalParams::symbol_energy},
        {"physical.flash_theta", &PhysicalParams::flash_theta},
        {"physical.k1", &PhysicalParams::k1},
        {"physical.k2", &PhysicalParams::k2},
        {"physical.k3", &PhysicalParams::k3}};
    bool any_physical = false;
    for (const auto& [key, member] : physical_fields) any_physical = any_physical || take(key);
    if (any_physical) {
        PhysicalParams p;
        for (const auto& [key, member] : physical_fields) {
            auto v = take(key);
            if (!v) throw ParameterError(key, "missing " + key);
            p.*member = parse_number<double>(key, *v);
        }
        cfg.physical = p;
    }
    if (auto v = take("physical.paths")) cfg.path_counts = parse_counts("physical.paths", *v);

    if (auto v = take("trials")) cfg.trials = parse_number<std::uint64_t>("trials", *v);
    if (auto v = take("master_seed")) cfg.master_seed = parse_number<std::uint64_t>("master_seed", *v);
    if (auto v = take("worker_count")) {
        if (*v == "auto") {
            cfg.workers = 0;
        } else {
            const auto w = parse_number<unsigned>("worker_count", *v);
            if (w < 1) throw ParameterError("worker_count", "worker_count must be >= 1 or auto");
            cfg.workers = w;
        }
    }
    if (auto v = take("detectors")) {
        cfg.detectors.clear();
        for (const auto& name : split(*v, ',')) cfg.detectors.push_back(parse_detector(name));
    }
    if (auto v = take("output_path")) cfg.output_path = *v;
    if (auto v = take("output_format")) cfg.output_format = parse_output_format(*v);

    validate_config(cfg);
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace ppmsync
