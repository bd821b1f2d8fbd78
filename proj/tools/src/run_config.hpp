#pragma once

// Run configuration for aro-sim. All physics inputs are dimensionless
// products with tau0 (delta*tau0, Omega0*tau0, t/tau0, ...), so the library is
// driven with tau0 = 1.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aro/model.hpp"
#include "aro/sweep.hpp"
#include "json.hpp"

namespace aro::cli {

enum class Mode { simulate, dressed, scan_area, scan_grid };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& name);

/// Parses level labels of the form "g0", "g-1", "e+2".
std::optional<Level> parse_level(const std::string& label);

/// Carries every problem found in one pass, one message per offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct SystemConfig {
  enum class Type { tripod, ladder };
  Type type = Type::tripod;
  double delta_tau0 = 0.0;
  std::optional<double> delta_prime_tau0;
  DetuningRule detuning;
  int n_ground = 3;
  int n_excited = 1;
  std::optional<std::vector<std::vector<double>>> weights;
  Level initial{Manifold::ground, 0};
  Level target{Manifold::excited, 0};

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct PulseConfig {
  PulseShape shape = PulseShape::gaussian;
  std::optional<double> omega0_tau0;
  std::optional<double> s0_over_pi;
  double tc_over_tau0 = 5.0;
  double t_start_over_tau0 = 0.0;
  std::optional<double> t_end_over_tau0;

  double t_end() const { return t_end_over_tau0.value_or(2.0 * tc_over_tau0); }

  friend bool operator==(const PulseConfig&, const PulseConfig&) = default;
};

struct NumericsConfig {
  double steps_per_tau0 = 2000.0;
  std::size_t output_stride = 1;
  double dressed_points_per_tau0 = 400.0;

  friend bool operator==(const NumericsConfig&, const NumericsConfig&) = default;
};

struct ScanConfig {
  Axis area_over_pi;
  std::optional<Axis> delta_tau0;
  bool adiabatic = false;

  friend bool operator==(const ScanConfig&, const ScanConfig&) = default;
};

struct OutputConfig {
  std::string directory = ".";
  std::string basename;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  Mode mode = Mode::simulate;
  SystemConfig system;
  PulseConfig pulse;
  NumericsConfig numerics;
  std::optional<ScanConfig> scan;
  OutputConfig output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  SystemTemplate system_template() const;
  LevelScheme scheme() const;
  PulseSpec pulse_spec() const;
  PulseTemplate pulse_template() const;
  ScanSpec scan_spec() const;
};

/// Builds and validates a config for `mode`. A "mode" key in the document,
/// if present, must agree. Throws ConfigError listing every problem.
RunConfig from_json(const nlohmann::json& doc, Mode mode);
RunConfig from_json(const nlohmann::json& doc);

/// Reads a config file; an empty file is an empty document.
RunConfig load(const std::filesystem::path& path, Mode mode);

nlohmann::json to_json(const RunConfig& config);

}  // namespace aro::cli
