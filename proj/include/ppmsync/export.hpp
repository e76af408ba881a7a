// export.hpp - CSV and JSON serialization of sweep results
//
// CSV: one header row, then one row per (point, detector):
//   M,L,k,A,trials,detector,zero_capture_rate,zero_capture_lo,zero_capture_hi,
//   miss_rate,miss_lo,miss_hi,capture_fraction,capture_lo,capture_hi,
//   mean_D,var_D,chebyshev_bound,seed_base
// Reals use 10 significant digits; analytic fields that do not apply are "NA".
//
// JSON nests the same fields per point and per detector, and also carries
// the raw integer counts so that parse_results_json restores the result exactly.

#pragma once

#include <string>

#include "ppmsync/config.hpp"
#include "ppmsync/sweep.hpp"

namespace ppmsync {

inline constexpr const char* kCsvHeader =
    "M,L,k,A,trials,detector,zero_capture_rate,zero_capture_lo,zero_capture_hi,"
    "miss_rate,miss_lo,miss_hi,capture_fraction,capture_lo,capture_hi,"
    "mean_D,var_D,chebyshev_bound,seed_base";

std::string to_csv(const SweepResult& r);
std::string to_json(const SweepResult& r);
SweepResult parse_results_json(const std::string& text);

/// Writes `r` to `path`; throws std::runtime_error naming the path on I/O failure.
void export_results(const SweepResult& r, const std::string& path, OutputFormat format);

}  // namespace ppmsync
