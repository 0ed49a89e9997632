#pragma once

// Experiment runner: dispatches a parsed config, fans replicates out across
// worker threads, and writes deterministic artifacts (results.csv,
// summary.json, plotdata/*.csv, manifest.json) to the output directory.
// Outputs are byte-identical for a fixed seed at any parallelism degree.

#include <iosfwd>
#include <optional>
#include <string>

#include "hail/config.hpp"
#include "hail/verify.hpp"

namespace hail {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  std::optional<int> jobs;
  std::ostream* log = nullptr;  // progress / verify report lines
};

// Returns the process exit status (0 on success; verification failures
// return 1). Throws ConfigError, AllContaminatedError or IoError otherwise.
int run_config(Config cfg, const RunOptions& opt);

// Replays a realization file through the indexed engine and writes the heap
// dump; used for fixture pinning and cross-implementation diffing.
void replay_file(const std::string& realization_path, const std::string& ground_text,
                 std::ostream& out);

}  // namespace hail
