#pragma once

// Parameter scans of the final target population over pulse area S0 and
// ground splitting delta. Every grid point is an independent propagation;
// results are assembled by index so the output does not depend on the number
// of workers or the order in which points finish.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aro/model.hpp"

namespace aro {

struct Axis {
  double min = 0.0;
  double max = 0.0;
  std::size_t n = 2;

  double at(std::size_t i) const;
  std::vector<double> values() const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

struct DetuningRule {
  enum class Kind { fixed, resonant };
  Kind kind = Kind::fixed;
  /// Used when kind == fixed.
  double value = 0.0;

  friend bool operator==(const DetuningRule&, const DetuningRule&) = default;
};

/// Level scheme with delta left open so that it can be swept.
struct SystemTemplate {
  int n_ground = 3;
  int n_excited = 1;
  double delta = 0.0;
  /// Unset: delta' follows delta.
  std::optional<double> delta_prime;
  DetuningRule detuning;
  std::optional<Eigen::MatrixXd> weights;

  LevelScheme make(double delta, const Level& initial, const Level& target) const;
};

struct PulseTemplate {
  PulseShape shape = PulseShape::gaussian;
  double tau0 = 1.0;
  double tc = 5.0;
  TimeWindow window{0.0, 10.0};

  /// Pulse whose analytic area equals s0.
  PulseSpec with_area(double s0) const;
};

enum class ScanMethod { tdse, adiabatic };

struct ScanSpec {
  SystemTemplate system;
  PulseTemplate pulse;
  Level initial{Manifold::ground, 0};
  Level target{Manifold::excited, 0};
  /// S0 in units of pi.
  Axis area_axis{0.0, 2.0, 101};
  /// delta in units of 1/tau0.
  std::optional<Axis> delta_axis;
  bool adiabatic = false;
  double steps_per_tau0 = 2000.0;
  /// Sampling of dressed branches and area integrands for the adiabatic curve.
  double dressed_points_per_tau0 = 400.0;
};

/// Row-major yields: rows follow delta_values, columns area_values.
struct ScanGrid {
  ScanSpec spec;
  std::vector<double> area_values;
  std::vector<double> delta_values;
  std::vector<double> yield_tdse;
  std::vector<double> yield_adiabatic;
  double integrator_step = 0.0;
  double max_norm_drift = 0.0;
  std::string version;

  bool two_dimensional() const { return spec.delta_axis.has_value(); }
  bool has_adiabatic() const { return !yield_adiabatic.empty(); }
  std::size_t rows() const { return delta_values.size(); }
  std::size_t cols() const { return area_values.size(); }
  double tdse(std::size_t row, std::size_t col) const {
    return yield_tdse[row * cols() + col];
  }
  std::span<const double> tdse_row(std::size_t row) const {
    return std::span<const double>(yield_tdse).subspan(row * cols(), cols());
  }
};

/// True when the adiabatic yield has the closed form sin^2(A/2) of the
/// symmetric tripod (3+1 levels, Delta = 0, |0> -> |0'>).
bool is_symmetric_tripod(const LevelScheme& scheme, const Level& initial,
                         const Level& target);

/// 1D scan over the area axis; `workers` = 0 picks the hardware concurrency.
ScanGrid scan_area(const ScanSpec& spec, unsigned workers = 0);

/// 2D scan over (delta, S0).
ScanGrid scan_area_delta(const ScanSpec& spec, unsigned workers = 0);

/// Adiabatic-limit yield at one point: closed form for the symmetric tripod,
/// generalized area of the two populated branches otherwise.
double adiabatic_yield(const ScanSpec& spec, double delta, double s0);

/// (max - min) / (max + min) of the yields whose S0 lies in [lo, hi].
double visibility(std::span<const double> area_values,
                  std::span<const double> yields, double lo, double hi);
double visibility(const ScanGrid& grid, double lo, double hi,
                  std::size_t row = 0);

/// Header `s0_over_pi[,delta_tau0],yield_tdse[,yield_adiabatic]`.
void write_scan_csv(std::ostream& os, const ScanGrid& grid);

}  // namespace aro
