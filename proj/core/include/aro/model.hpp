#pragma once

// Core domain types shared by every module: drive envelopes, level schemes,
// state vectors and uniform time grids.
//
// Units: frequencies are angular (rad per unit time) and hbar = 1, so an
// energy and a frequency are interchangeable. Callers that work in units of
// the pulse width simply pass tau0 = 1.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace aro {

using Complex = std::complex<double>;

/// Raised when an integration or decomposition cannot meet its accuracy
/// contract (norm drift, NaN, ambiguous branch assignment).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
};

enum class PulseShape { gaussian, constant };

/// Real, non-negative drive envelope Omega(t).
///
/// Gaussian: Omega0 * exp(-(t - tc)^2 / (2 tau0^2)) everywhere; the window
/// only records the intended integration interval. Constant: Omega0 inside
/// [window.start, window.end], zero outside.
class PulseSpec {
 public:
  static PulseSpec gaussian(double omega0, double tau0, double tc,
                            TimeWindow window);
  static PulseSpec constant(double omega0, TimeWindow window,
                            double tau0 = 1.0);

  /// Gaussian centred in the default window [0, 2 tc] with tc = 5 tau0.
  static PulseSpec default_gaussian(double omega0, double tau0 = 1.0);

  PulseShape shape() const { return shape_; }
  double omega0() const { return omega0_; }
  double tau0() const { return tau0_; }
  double tc() const { return tc_; }
  const TimeWindow& window() const { return window_; }

  double value(double t) const;

  /// Closed-form area over the whole real line (gaussian) or the window
  /// (constant).
  double analytic_area() const;

  /// Same shape, width and window with a different peak Rabi frequency.
  PulseSpec with_peak(double omega0) const;

 private:
  PulseSpec(PulseShape shape, double omega0, double tau0, double tc,
            TimeWindow window);

  PulseShape shape_;
  double omega0_;
  double tau0_;
  double tc_;
  TimeWindow window_;
};

/// Peak Rabi frequency of a Gaussian of width tau0 carrying area s0.
double gaussian_peak_for_area(double s0, double tau0);

/// Uniform grid of n_steps intervals (n_steps + 1 points). A negative step
/// (end < start) is allowed and integrates backwards in time.
class TimeGrid {
 public:
  TimeGrid(double start, double end, std::size_t n_steps);

  /// Grid over `window` with ceil(points_per_tau0 * length / tau0) steps.
  static TimeGrid over(const TimeWindow& window, double tau0,
                       double steps_per_tau0);

  double start() const { return start_; }
  double end() const { return end_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t size() const { return n_steps_ + 1; }
  double step() const { return (end_ - start_) / static_cast<double>(n_steps_); }
  double time(std::size_t k) const;
  std::vector<double> times() const;
  TimeGrid reversed() const { return TimeGrid(end_, start_, n_steps_); }

 private:
  double start_;
  double end_;
  std::size_t n_steps_;
};

double pulse_value(const PulseSpec& pulse, double t);

struct PulseAreaResult {
  double area = 0.0;
  /// Fraction of the analytic area lying outside the grid span.
  double truncated_fraction = 0.0;
  /// Set when more than 0.1% of the analytic area is cut off.
  bool truncation_warning = false;
};

PulseAreaResult pulse_area(const PulseSpec& pulse, const TimeGrid& grid);

enum class Manifold { ground, excited };

/// Level label: manifold plus magnetic-like index m (symmetric about 0).
struct Level {
  Manifold manifold = Manifold::ground;
  int m = 0;

  friend bool operator==(const Level&, const Level&) = default;
};

std::string to_string(const Level& level);

/// Ground and excited manifolds with equally spaced levels.
///
/// Basis ordering: ground levels by ascending m, then excited levels by
/// ascending m'. Ground level m sits at delta * m; excited level m' at
/// delta_prime * m' + detuning. Manifold sizes must be odd so that m runs
/// symmetrically about zero.
class LevelScheme {
 public:
  LevelScheme(int n_ground, int n_excited, double delta, double delta_prime,
              double detuning, Eigen::MatrixXd coupling_weights);
  LevelScheme(int n_ground, int n_excited, double delta, double delta_prime,
              double detuning);

  static LevelScheme tripod(double delta, double detuning);

  int n_ground() const { return n_ground_; }
  int n_excited() const { return n_excited_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(n_ground_ + n_excited_);
  }
  double delta() const { return delta_; }
  double delta_prime() const { return delta_prime_; }
  double detuning() const { return detuning_; }
  const Eigen::MatrixXd& coupling_weights() const { return weights_; }

  std::size_t index_of(const Level& level) const;
  Level level_at(std::size_t index) const;
  bool contains(const Level& level) const;
  double bare_energy(std::size_t index) const;
  Eigen::VectorXd bare_energies() const;

  /// Detuning that makes `to` degenerate with `from` in the field-free
  /// Hamiltonian (one ground and one excited level).
  double resonant_detuning(const Level& from, const Level& to) const;

 private:
  int half_ground() const { return (n_ground_ - 1) / 2; }
  int half_excited() const { return (n_excited_ - 1) / 2; }

  int n_ground_;
  int n_excited_;
  double delta_;
  double delta_prime_;
  double detuning_;
  Eigen::MatrixXd weights_;
};

/// Unit-norm vector of complex amplitudes in the LevelScheme basis order.
class StateVector {
 public:
  explicit StateVector(Eigen::VectorXcd amplitudes);

  static StateVector basis(std::size_t dimension, std::size_t index);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  Complex operator[](std::size_t i) const {
    return amplitudes_(static_cast<Eigen::Index>(i));
  }
  double population(std::size_t i) const { return std::norm((*this)[i]); }

  /// Reorders amplitudes so that result[i] = (*this)[order[i]].
  StateVector permuted(const std::vector<std::size_t>& order) const;

 private:
  Eigen::VectorXcd amplitudes_;
};

}  // namespace aro
