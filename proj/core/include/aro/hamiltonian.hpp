#pragma once

#include <optional>
#include <span>

#include "aro/model.hpp"

namespace aro {

/// Time-dependent RWA Hamiltonian
///
///   H(t) = sum_M delta M |M><M| + sum_M' (delta' M' + Delta) |M'><M'|
///          - Omega(t)/2 sum_{M,M'} w_{M,M'} (|M><M'| + h.c.)
///
/// No ground-ground or excited-excited couplings. The matrix is real
/// symmetric; evaluate() returns it as a complex Hermitian matrix.
class RwaHamiltonian {
 public:
  RwaHamiltonian(LevelScheme scheme, PulseSpec pulse);

  const LevelScheme& scheme() const { return scheme_; }
  const PulseSpec& pulse() const { return pulse_; }
  std::size_t dimension() const { return scheme_.dimension(); }

  /// Field-independent diagonal.
  const Eigen::VectorXd& bare_energies() const { return bare_; }
  /// dH/dOmega: -w/2 in the ground/excited blocks, zero elsewhere.
  const Eigen::MatrixXd& coupling() const { return coupling_; }

  Eigen::MatrixXcd evaluate(double t) const;
  /// Same matrix for a given envelope value rather than a time.
  Eigen::MatrixXcd at_field(double omega) const;

  /// out = H(t) * psi without forming the matrix. `out` must not alias psi.
  void apply(double t, std::span<const Complex> psi,
             std::span<Complex> out) const;

 private:
  LevelScheme scheme_;
  PulseSpec pulse_;
  Eigen::VectorXd bare_;
  Eigen::MatrixXd coupling_;
};

RwaHamiltonian build_tripod(double delta, double detuning, PulseSpec pulse);

RwaHamiltonian build_ladder(int n_ground, int n_excited, double delta,
                            double delta_prime, double detuning,
                            PulseSpec pulse,
                            std::optional<Eigen::MatrixXd> weights = {});

inline Eigen::MatrixXcd evaluate(const RwaHamiltonian& h, double t) {
  return h.evaluate(t);
}

}  // namespace aro
