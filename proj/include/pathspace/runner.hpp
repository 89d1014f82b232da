#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathspace {

// configuration problems map to exit code 2 at the CLI boundary
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  bool has_seed = false;
  uint64_t seed = 0;
  int factor2_override = -1;     // -1 keep config value, 0 off, 1 on
  long long paths_override = 0;  // 0 keeps the config value
  int steps_override = 0;        // 0 keeps the config value
};

// Subcommand bodies. Each parses and validates the configuration, applies
// the CLI overrides, runs the scenario, and only then writes its output
// files, so a failed run leaves no partial files behind. Return value is the
// process exit code: 0 clean, 1 when any verdict is violated. Malformed
// configuration throws ConfigError.
int run_verify(const CliOptions& opt);
int run_constants(const CliOptions& opt);
int run_sweep(const CliOptions& opt);
int run_dump_paths(const CliOptions& opt);

}  // namespace pathspace
