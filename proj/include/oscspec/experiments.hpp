#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "oscspec/config.hpp"

namespace oscspec {

struct RunOptions {
  std::filesystem::path output_dir;  // empty: config output_path, then $OSCSPEC_OUTPUT_DIR, then ./oscspec-out
  unsigned threads = 1;
};

struct RunResult {
  int exit_code = 0;  // 0 completed, 1 error, 2 an inequality was violated
  std::string verdict;
  std::string error_message;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
};

inline constexpr const char* kOutputDirEnv = "OSCSPEC_OUTPUT_DIR";

/// Output directory resolution order described in RunOptions.
std::filesystem::path resolve_output_dir(const ExperimentConfig& config, const RunOptions& options);

/// Dispatches the named experiment, writes <dir>/<experiment>.csv and
/// <dir>/<experiment>.summary.json.  Module errors are caught and reported with exit code 1.
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

struct CatalogEntry {
  std::string name;
  std::string description;
  std::string theorem;
  std::string sample_config;  // JSON accepted by parse_config
};

const std::vector<CatalogEntry>& list_experiments();

}  // namespace oscspec
