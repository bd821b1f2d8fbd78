#include "aro/propagator.hpp"

#include <cmath>
#include <ostream>
#include <span>
#include <string>

#include "aro/csv.hpp"

namespace aro {

namespace {

// Fixed-step RK4 for dpsi/dt = -i H(t) psi with scratch buffers reused
// across steps.
class Rk4Stepper {
 public:
  explicit Rk4Stepper(const RwaHamiltonian& h)
      : h_(h), n_(h.dimension()), k1_(n_), k2_(n_), k3_(n_), k4_(n_), tmp_(n_) {}

  void step(double t, double dt, std::vector<Complex>& psi) {
    const double half = 0.5 * dt;
    rhs(t, psi, k1_);
    axpy(psi, half, k1_, tmp_);
    rhs(t + half, tmp_, k2_);
    axpy(psi, half, k2_, tmp_);
    rhs(t + half, tmp_, k3_);
    axpy(psi, dt, k3_, tmp_);
    rhs(t + dt, tmp_, k4_);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n_; ++i) {
      psi[i] += w * (k1_[i] + 2.0 * (k2_[i] + k3_[i]) + k4_[i]);
    }
  }

 private:
  void rhs(double t, const std::vector<Complex>& psi, std::vector<Complex>& out) {
    h_.apply(t, psi, out);
    for (auto& v : out) v = Complex(v.imag(), -v.real());  // -i * v
  }

  void axpy(const std::vector<Complex>& x, double a, const std::vector<Complex>& k,
            std::vector<Complex>& out) const {
    for (std::size_t i = 0; i < n_; ++i) out[i] = x[i] + a * k[i];
  }

  const RwaHamiltonian& h_;
  std::size_t n_;
  std::vector<Complex> k1_, k2_, k3_, k4_, tmp_;
};

double norm2(const std::vector<Complex>& psi) {
  double s = 0.0;
  for (const auto& a : psi) s += std::norm(a);
  return s;
}

std::vector<Complex> to_buffer(const StateVector& psi0) {
  const auto& a = psi0.amplitudes();
  return std::vector<Complex>(a.data(), a.data() + a.size());
}

Eigen::VectorXcd to_vector(const std::vector<Complex>& psi) {
  return Eigen::Map<const Eigen::VectorXcd>(psi.data(),
                                           static_cast<Eigen::Index>(psi.size()));
}

void check_dimensions(const RwaHamiltonian& h, const StateVector& psi0) {
  if (psi0.dimension() != h.dimension()) {
    throw std::invalid_argument(
        "propagate: initial state has dimension " +
        std::to_string(psi0.dimension()) + ", Hamiltonian has " +
        std::to_string(h.dimension()));
  }
}

void check_step(double norm, double t, double tolerance) {
  if (!std::isfinite(norm)) {
    throw NumericalError("propagate: non-finite state at t=" + csv::format(t));
  }
  if (std::abs(norm - 1.0) > tolerance) {
    throw NumericalError("propagate: norm drift " + csv::format(std::abs(norm - 1.0)) +
                         " at t=" + csv::format(t) +
                         " exceeds tolerance; use a smaller step");
  }
}

}  // namespace

TimeGrid default_grid(const PulseSpec& pulse, double steps_per_tau0) {
  return TimeGrid::over(pulse.window(), pulse.tau0(), steps_per_tau0);
}

Trajectory propagate(const RwaHamiltonian& h, const StateVector& psi0,
                     const TimeGrid& grid, const PropagationOptions& options) {
  check_dimensions(h, psi0);
  const std::size_t stride = std::max<std::size_t>(1, options.stride);
  const std::size_t n_steps = grid.n_steps();
  const std::size_t n_samples = n_steps / stride + (n_steps % stride ? 2 : 1);
  const auto dim = static_cast<Eigen::Index>(h.dimension());

  Trajectory tr;
  tr.times.reserve(n_samples);
  tr.states.reserve(n_samples);
  tr.norms.reserve(n_samples);
  tr.populations.resize(static_cast<Eigen::Index>(n_samples), dim);

  std::vector<Complex> psi = to_buffer(psi0);
  auto record = [&](std::size_t k, double norm) {
    const auto row = static_cast<Eigen::Index>(tr.times.size());
    tr.times.push_back(grid.time(k));
    tr.norms.push_back(norm);
    for (Eigen::Index i = 0; i < dim; ++i) {
      tr.populations(row, i) = std::norm(psi[static_cast<std::size_t>(i)]);
    }
    tr.states.push_back(to_vector(psi));
  };

  double norm = norm2(psi);
  tr.norm_drift = std::abs(norm - 1.0);
  record(0, norm);

  Rk4Stepper stepper(h);
  const double dt = grid.step();
  for (std::size_t k = 0; k < n_steps; ++k) {
    stepper.step(grid.time(k), dt, psi);
    norm = norm2(psi);
    check_step(norm, grid.time(k + 1), options.norm_tolerance);
    tr.norm_drift = std::max(tr.norm_drift, std::abs(norm - 1.0));
    if ((k + 1) % stride == 0 || k + 1 == n_steps) record(k + 1, norm);
  }
  return tr;
}

Eigen::VectorXcd propagate_final(const RwaHamiltonian& h, const StateVector& psi0,
                                 const TimeGrid& grid, double norm_tolerance,
                                 double* norm_drift) {
  check_dimensions(h, psi0);
  std::vector<Complex> psi = to_buffer(psi0);
  Rk4Stepper stepper(h);
  const double dt = grid.step();
  double drift = 0.0;
  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    stepper.step(grid.time(k), dt, psi);
    const double norm = norm2(psi);
    check_step(norm, grid.time(k + 1), norm_tolerance);
    drift = std::max(drift, std::abs(norm - 1.0));
  }
  if (norm_drift) *norm_drift = drift;
  return to_vector(psi);
}

double final_population(const Trajectory& trajectory, std::size_t level) {
  if (level >= trajectory.dimension()) {
    throw std::invalid_argument("final_population: level index out of range");
  }
  return trajectory.populations(trajectory.populations.rows() - 1,
                                static_cast<Eigen::Index>(level));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  const std::size_t dim = trajectory.dimension();
  std::vector<std::string> header{"t"};
  for (std::size_t i = 1; i <= dim; ++i) header.push_back("pop_" + std::to_string(i));
  header.emplace_back("norm");
  csv::write_header(os, header);

  std::vector<double> row(dim + 2);
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    row[0] = trajectory.times[k];
    for (std::size_t i = 0; i < dim; ++i) {
      row[1 + i] = trajectory.populations(static_cast<Eigen::Index>(k),
                                          static_cast<Eigen::Index>(i));
    }
    row[dim + 1] = trajectory.norms[k];
    csv::write_row(os, row);
  }
}

}  // namespace aro
