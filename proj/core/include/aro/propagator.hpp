#pragma once

#include <iosfwd>
#include <vector>

#include "aro/hamiltonian.hpp"

namespace aro {

inline constexpr double kDefaultStepsPerTau0 = 2000.0;

struct PropagationOptions {
  /// Keep every stride-th grid point (the final point is always kept).
  std::size_t stride = 1;
  /// Runs whose norm drifts further than this are rejected.
  double norm_tolerance = 1e-6;
};

/// Sampled solution of i dpsi/dt = H(t) psi. States are never renormalised;
/// norm_drift records max | ||psi||^2 - 1 | over every integration step.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  /// n_samples x dim, |a_i|^2.
  Eigen::MatrixXd populations;
  std::vector<double> norms;
  double norm_drift = 0.0;

  std::size_t dimension() const {
    return static_cast<std::size_t>(populations.cols());
  }
};

/// Integration grid over the pulse window at `steps_per_tau0` steps per tau0.
TimeGrid default_grid(const PulseSpec& pulse,
                      double steps_per_tau0 = kDefaultStepsPerTau0);

/// Classical fourth-order Runge-Kutta with fixed step.
///
/// Throws NumericalError when the state becomes non-finite or the norm drift
/// exceeds options.norm_tolerance.
Trajectory propagate(const RwaHamiltonian& h, const StateVector& psi0,
                     const TimeGrid& grid, const PropagationOptions& options = {});

/// Final state only; the lean path used by parameter scans.
Eigen::VectorXcd propagate_final(const RwaHamiltonian& h,
                                 const StateVector& psi0, const TimeGrid& grid,
                                 double norm_tolerance = 1e-6,
                                 double* norm_drift = nullptr);

double final_population(const Trajectory& trajectory, std::size_t level);

/// Columns t, pop_1..pop_dim, norm.
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

}  // namespace aro
