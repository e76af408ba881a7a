// ppmsync - run synchronization sweeps and inspect the order-statistic analysis
//
//   ppmsync run --config sweep.cfg [--seed N] [--workers N] [--out PATH] [--format csv|json]
//   ppmsync oracle --nu 1 --G 1000
//   ppmsync report --M 4096 --L 8 --k 2
//
// Errors print a single line "error: <kind>: <message>" to stderr and exit 1.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ppmsync/config.hpp"
#include "ppmsync/export.hpp"
#include "ppmsync/order_stats.hpp"
#include "ppmsync/sweep.hpp"

namespace {

std::string one_line(std::string s) {
    for (auto& ch : s) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    return s;
}

int fail(const std::string& kind, const std::string& message) {
    std::cerr << "error: " << kind << ": " << one_line(message) << "\n";
    return 1;
}

std::string fmt_optional(const std::optional<double>& v) {
    if (!v) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", *v);
    return buf;
}

void print_row(const char* name, double a, double b) {
    std::printf("%-10s %18.10f %18.10f %14.3e\n", name, a, b, a - b);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PPM multipath synchronization simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a Monte Carlo sweep from a config file");
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> workers;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    run->add_option("--config", config_path, "sweep configuration file")->required();
    run->add_option("--seed", seed, "override master_seed");
    run->add_option("--workers", workers, "worker threads (integer or auto)");
    run->add_option("--out", out_path, "output file (default: output_path from config, else stdout)");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* oracle = app.add_subcommand("oracle", "compare exact order-statistic moments with the Cramer expansion");
    std::uint64_t nu = 1;
    std::uint64_t population = 0;
    oracle->add_option("--nu", nu, "rank from the top")->required();
    oracle->add_option("--G", population, "population size")->required();

    auto* report = app.add_subcommand("report", "print the dominance report for (M, L, k)");
    std::uint64_t m = 0;
    std::uint64_t l = 0;
    double k = 0.0;
    report->add_option("--M", m, "number of delay positions")->required();
    report->add_option("--L", l, "number of paths")->required();
    report->add_option("--k", k, "SNR scale")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        if (*run) {
            ppmsync::SweepConfig cfg = ppmsync::load_config(config_path);
            if (seed) cfg.master_seed = *seed;
            if (workers) {
                if (*workers == "auto") {
                    cfg.workers = 0;
                } else {
                    const long w = std::stol(*workers);
                    if (w < 1) throw ppmsync::ParameterError("workers", "--workers must be >= 1 or auto");
                    cfg.workers = static_cast<unsigned>(w);
                }
            }
            if (format) cfg.output_format = ppmsync::parse_output_format(*format);
            if (out_path) cfg.output_path = *out_path;

            const ppmsync::SweepResult result = ppmsync::run_sweep(cfg);
            if (cfg.output_path.empty() || cfg.output_path == "-") {
                std::cout << (cfg.output_format == ppmsync::OutputFormat::csv ? ppmsync::to_csv(result)
                                                                               : ppmsync::to_json(result));
            } else {
                ppmsync::export_results(result, cfg.output_path, cfg.output_format);
            }
        } else if (*oracle) {
            const ppmsync::Moments exact = ppmsync::order_stat_oracle(nu, population);
            std::printf("nu=%llu G=%llu\n", static_cast<unsigned long long>(nu),
                        static_cast<unsigned long long>(population));
            std::printf("%-10s %18s %18s %14s\n", "moment", "oracle", "cramer", "difference");
            if (population >= 3) {
                const ppmsync::OrderStatQuery q{nu, population, 0.0, 1.0};
                print_row("mean", exact.mean, ppmsync::cramer_mean(q));
                print_row("variance", exact.var, ppmsync::cramer_var(q));
            } else {
                std::printf("%-10s %18.10f %18s\n", "mean", exact.mean, "NA");
                std::printf("%-10s %18.10f %18s\n", "variance", exact.var, "NA");
            }
        } else if (*report) {
            const ppmsync::CanonicalParams c{m, l, k};
            const ppmsync::DominanceReport r = ppmsync::dominance_report(c);
            std::printf("M=%llu L=%llu k=%.10g A=%.10g\n", static_cast<unsigned long long>(m),
                        static_cast<unsigned long long>(l), k, c.amplitude());
            std::printf("mean_SL=%s var_SL=%s\n", fmt_optional(r.mean_SL).c_str(), fmt_optional(r.var_SL).c_str());
            std::printf("mean_B1=%.10g var_B1=%.10g\n", r.mean_B1, r.var_B1);
            std::printf("mean_S1=%.10g var_S1=%.10g\n", r.mean_S1, r.var_S1);
            std::printf("mean_BL=%.10g var_BL=%.10g\n", r.mean_BL, r.var_BL);
            std::printf("mean_D=%s var_D=%s\n", fmt_optional(r.mean_D).c_str(), fmt_optional(r.var_D).c_str());
            std::printf("chebyshev_lower_bound=%s\n", fmt_optional(r.chebyshev_lower_bound).c_str());
        }
    } catch (const ppmsync::ParameterError& e) {
        return fail("parameter", e.what());
    } catch (const std::invalid_argument& e) {
        return fail("invalid_argument", e.what());
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
    return 0;
}
