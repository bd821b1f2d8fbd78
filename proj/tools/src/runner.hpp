#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "run_config.hpp"

namespace aro::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kNumericalError = 3 };

/// An output file already exists and overwriting was not requested.
class CollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  /// Overrides output.directory from the config.
  std::optional<std::filesystem::path> out_dir;
  unsigned workers = 0;
  bool overwrite = false;
};

struct OutputFile {
  std::string name;
  std::size_t bytes = 0;
  std::string sha256;
};

struct RunReport {
  std::filesystem::path directory;
  /// Data files and metadata sidecar, in the order they were written.
  std::vector<OutputFile> files;
  std::filesystem::path manifest;
  std::string summary;
};

std::string sha256_hex(std::string_view data);

/// Runs one configuration and writes its outputs plus a checksummed manifest.
/// Every file name is checked for collisions before anything is computed.
RunReport run(const RunConfig& config, const RunOptions& options);

/// Entry point shared by the executable and the tests.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aro::cli
