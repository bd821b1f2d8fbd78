#include "aro/hamiltonian.hpp"

namespace aro {

RwaHamiltonian::RwaHamiltonian(LevelScheme scheme, PulseSpec pulse)
    : scheme_(std::move(scheme)),
      pulse_(std::move(pulse)),
      bare_(scheme_.bare_energies()) {
  const auto n = static_cast<Eigen::Index>(scheme_.dimension());
  const Eigen::Index ng = scheme_.n_ground();
  const Eigen::Index ne = scheme_.n_excited();
  coupling_ = Eigen::MatrixXd::Zero(n, n);
  coupling_.block(0, ng, ng, ne) = -0.5 * scheme_.coupling_weights();
  coupling_.block(ng, 0, ne, ng) = -0.5 * scheme_.coupling_weights().transpose();
}

Eigen::MatrixXcd RwaHamiltonian::at_field(double omega) const {
  Eigen::MatrixXd h = omega * coupling_;
  h.diagonal() += bare_;
  return h.cast<Complex>();
}

Eigen::MatrixXcd RwaHamiltonian::evaluate(double t) const {
  return at_field(pulse_.value(t));
}

void RwaHamiltonian::apply(double t, std::span<const Complex> psi,
                           std::span<Complex> out) const {
  const double omega = pulse_.value(t);
  const std::size_t ng = static_cast<std::size_t>(scheme_.n_ground());
  const std::size_t n = dimension();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = bare_(static_cast<Eigen::Index>(i)) * psi[i];
  }
  if (omega == 0.0) return;
  // Only the off-diagonal blocks are non-zero.
  for (std::size_t i = 0; i < ng; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = ng; j < n; ++j) {
      acc += coupling_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * psi[j];
    }
    out[i] += omega * acc;
  }
  for (std::size_t j = ng; j < n; ++j) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < ng; ++i) {
      acc += coupling_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * psi[i];
    }
    out[j] += omega * acc;
  }
}

RwaHamiltonian build_tripod(double delta, double detuning, PulseSpec pulse) {
  return RwaHamiltonian(LevelScheme::tripod(delta, detuning), std::move(pulse));
}

RwaHamiltonian build_ladder(int n_ground, int n_excited, double delta,
                            double delta_prime, double detuning,
                            PulseSpec pulse,
                            std::optional<Eigen::MatrixXd> weights) {
  if (weights) {
    return RwaHamiltonian(LevelScheme(n_ground, n_excited, delta, delta_prime,
                                      detuning, std::move(*weights)),
                          std::move(pulse));
  }
  return RwaHamiltonian(
      LevelScheme(n_ground, n_excited, delta, delta_prime, detuning),
      std::move(pulse));
}

}  // namespace aro
