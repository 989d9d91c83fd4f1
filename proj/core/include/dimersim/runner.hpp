#pragma once

#include <cstddef>
#include <string>

#include "dimersim/config.hpp"

namespace dimersim {

struct RunOptions {
  std::string out_dir = ".";  // created if missing
  int threads = 0;            // 0: machine parallelism
};

struct RunResult {
  std::string output_path;
  std::size_t rows = 0;
};

// Validate the configuration, compute the scenario's table and write it as
// CSV into out_dir. The file name comes from the config's 'output' entry
// (default '<scenario>.csv'). The header records the library version, the
// scenario and every resolved parameter, so a result file is reproducible
// from its header alone; output bytes do not depend on the thread count.
// Writing goes through a temporary file that is renamed on success.
RunResult run_config(const RunConfig& config, const RunOptions& opts);

}  // namespace dimersim
