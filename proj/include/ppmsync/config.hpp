// config.hpp - flat key = value sweep configuration files
//
//   # comment
//   mode            = canonical          # or physical
//   regime.exponent = 0.25               # regime form ...
//   regime.ladder   = 1024, 16384, 262144, 4194304
//   regime.k        = 2
//   points          = 1024:6:2, 4096:8:2 # ... or explicit M:L:k points
//   physical.bandwidth = 1e9             # physical mode keys
//   physical.symbol_time, physical.delay_spread, physical.symbol_energy,
//   physical.flash_theta, physical.k1, physical.k2, physical.k3
//   physical.paths  = 4, 8, 16
//   trials          = 2000
//   master_seed     = 12345
//   worker_count    = auto               # or a positive integer
//   detectors       = ml, random
//   output_path     = results.csv
//   output_format   = csv                # or json
//
// Unknown or repeated keys are errors.

#pragma once

#include <istream>
#include <string>

#include "ppmsync/sweep.hpp"

namespace ppmsync {

SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);

OutputFormat parse_output_format(const std::string& name);
std::string to_string(OutputFormat f);

}  // namespace ppmsync
