#pragma once

#include <memory>
#include <string>

#include "thermopauli/thermo.hpp"

namespace thermopauli::json_io {

struct CliOptions {
  std::string backend = "float";  // "float" or "exact"
  double kB = 1.0;
  // Negative means "keep the library default".
  double tol_degenerate = -1.0;
  double tol_w2 = -1.0;
  double clamp_d = -1.0;
};

struct CommandResult {
  // 0 success, 1 internal failure, 2 admissibility rejection, 3 schema violation
  int exit_code = 0;
  std::string output_json;
  std::string csv;  // non-empty when the command produced plot data
};

// Runs one CLI command over JSON text.  Never throws: failures come back as
// an error document plus the matching exit code.
CommandResult run_command(const std::string& command, const std::string& input_json,
                          const CliOptions& options = {});

// Entropy-model registry entry point (bare model object, no schema wrapper).
std::shared_ptr<const EntropyModel> parse_model_json(const std::string& text);

}  // namespace thermopauli::json_io
