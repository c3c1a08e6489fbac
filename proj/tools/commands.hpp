#pragma once

#include <iosfwd>

#include "config.hpp"

namespace cfou::cli {

enum ExitCode { kOk = 0, kInternal = 1, kValidation = 2, kNumerical = 3 };

// Runs the experiment. Outputs go to cfg's out_path, or to `out` when it is
// empty. Exceptions propagate.
void dispatch(const ExperimentConfig& cfg, std::ostream& out);

// Full command line: parsing, --config, --threads / CFOU_THREADS, dispatch
// and error mapping. Errors are one line on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfou::cli
