#pragma once

// Dressed-state analysis: instantaneous eigensystems of H(t), continuous
// branches through avoided crossings, and the closed-form spectrum of the
// symmetric tripod.

#include <array>
#include <iosfwd>
#include <vector>

#include "aro/hamiltonian.hpp"

namespace aro {

/// Eigenvalues ascending; eigenvectors as columns. The largest-magnitude
/// component of each eigenvector is real and positive.
struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& matrix);

Eigensystem dressed_spectrum(const RwaHamiltonian& h, double t);

/// Closed-form symmetric-tripod (Delta = 0) spectrum for coupling
/// chi = Omega/2, in the order (lambda1, lambda2, lambda3, lambda4) =
/// (-inner, +inner, -outer, +outer).
std::array<double, 4> analytic_tripod_eigenvalues(double delta, double chi);

/// Positive inner branch lambda2 of the symmetric tripod.
double tripod_inner_eigenvalue(double delta, double chi);

/// Gap lambda2 - lambda1 of the populated inner pair. Equals 2 chi for weak
/// fields and saturates at 2 delta / sqrt(3).
double tlds_gap(double delta, double chi);

/// Continuous dressed-state branches on a time grid.
///
/// Branch k is the eigenpair ranked k-th by energy at the first grid point;
/// afterwards branches follow maximal eigenvector overlap, so a label keeps
/// its identity through avoided crossings instead of being re-sorted by value.
struct DressedBranches {
  std::vector<double> times;
  /// n_times x dim, column k is branch k.
  Eigen::MatrixXd eigenvalues;
  /// One dim x dim matrix per time; column k is branch k.
  std::vector<Eigen::MatrixXcd> eigenvectors;
  /// |<branch k at t0 | initial>|^2.
  std::vector<double> initial_weights;
  std::vector<bool> populated;

  std::size_t dimension() const {
    return static_cast<std::size_t>(eigenvalues.cols());
  }
  std::vector<std::size_t> populated_indices() const;
};

inline constexpr double kPopulatedThreshold = 1e-3;

DressedBranches track_branches(const RwaHamiltonian& h, const TimeGrid& grid,
                               const StateVector& initial);

/// Columns t, lambda_1..lambda_dim, populated_1..populated_dim.
void write_branches_csv(std::ostream& os, const DressedBranches& branches);

}  // namespace aro
