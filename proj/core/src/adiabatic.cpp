#include "aro/adiabatic.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "aro/csv.hpp"
#include "aro/quadrature.hpp"

namespace aro {

namespace {

std::vector<double> sample(const TimeGrid& grid, auto&& f) {
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f(grid.time(k));
  return out;
}

std::vector<double> inner_branch_samples(double delta, const PulseSpec& pulse,
                                         const TimeGrid& grid) {
  return sample(grid, [&](double t) {
    return tripod_inner_eigenvalue(delta, 0.5 * pulse.value(t));
  });
}

}  // namespace

double tls_population(double omega0, double detuning, double t) {
  const double eff2 = omega0 * omega0 + detuning * detuning;
  if (eff2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(eff2) * t);
  return omega0 * omega0 / eff2 * s * s;
}

AdiabaticPrefactors adiabatic_prefactors(double delta, double chi) {
  if (delta > 0.0 && chi / delta < kZeroFieldRatio) return {1.0, 1.0};
  const double d2 = delta * delta;
  const double c2 = chi * chi;
  const double big_d2 = std::sqrt(d2 * d2 + 2.0 * c2 * d2 + 9.0 * c2 * c2);
  const double big_d = std::sqrt(big_d2);
  // D^2 - delta^2 - chi^2 = 8 chi^4 / s, with s = D^2 + delta^2 + chi^2
  const double s = big_d2 + d2 + c2;
  AdiabaticPrefactors p;
  p.ground = std::sqrt(s) / (std::numbers::sqrt2 * big_d);
  p.excited = delta / (big_d * std::sqrt(1.0 + 2.0 * c2 / s));
  return p;
}

AdiabaticResult adiabatic_amplitudes(double delta, const PulseSpec& pulse,
                                     const TimeGrid& grid) {
  AdiabaticResult r;
  r.times = grid.times();
  const auto lambda2 = inner_branch_samples(delta, pulse, grid);
  const auto phase = quadrature::cumulative_simpson(lambda2, grid.step());

  r.a0.resize(r.times.size());
  r.a0p.resize(r.times.size());
  r.cumulative_area.resize(r.times.size());
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const auto p = adiabatic_prefactors(delta, 0.5 * pulse.value(r.times[k]));
    r.a0[k] = p.ground * std::cos(phase[k]);
    r.a0p[k] = Complex(0.0, p.excited * std::sin(phase[k]));
    r.cumulative_area[k] = 2.0 * phase[k];
  }
  r.area = r.cumulative_area.back();

  const double per_tau0 = static_cast<double>(grid.n_steps()) * pulse.tau0() /
                          std::abs(grid.end() - grid.start());
  r.coarse_grid_warning = per_tau0 < 200.0;
  return r;
}

double area_symmetric_tripod(double delta, const PulseSpec& pulse,
                             const TimeGrid& grid) {
  return 2.0 * quadrature::simpson(inner_branch_samples(delta, pulse, grid),
                                   grid.step());
}

SmallIntensityArea area_small_intensity(double delta, const PulseSpec& pulse,
                                        const TimeGrid& grid,
                                        CorrectionForm form) {
  const double scale = form == CorrectionForm::printed
                           ? 4.0 * std::pow(delta, 4)
                           : 4.0 * delta * delta;
  const auto integrand = sample(grid, [&](double t) {
    const double omega = pulse.value(t);
    return omega * (1.0 - omega * omega / scale);
  });

  SmallIntensityArea r;
  r.form = form;
  r.area = quadrature::simpson(integrand, grid.step());
  r.exact_area = area_symmetric_tripod(delta, pulse, grid);
  r.pulse_area = pulse_area(pulse, grid).area;
  r.relative_error =
      r.exact_area != 0.0 ? (r.area - r.exact_area) / r.exact_area : 0.0;
  r.outside_validity = pulse.omega0() >= delta;
  return r;
}

CubicCorrectionReport cubic_correction_report(double delta,
                                              const PulseSpec& shape,
                                              const TimeGrid& grid) {
  CubicCorrectionReport r;
  r.delta = delta;

  const PulseSpec unit = shape.with_peak(1.0);
  const auto f = sample(grid, [&](double t) { return unit.value(t); });
  std::vector<double> f3(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) f3[k] = f[k] * f[k] * f[k];
  const double m1 = quadrature::simpson(f, grid.step());
  const double m3 = quadrature::simpson(f3, grid.step());
  r.linear_pulse_area = m1;
  r.cubic_printed = -m3 / (4.0 * std::pow(delta, 4));
  r.cubic_dimensional = -m3 / (4.0 * delta * delta);

  // A(e)/e = c1 + c3 e^2 + c5 e^4: solve on three weak amplitudes.
  const std::array<double, 3> amps{0.01 * delta, 0.02 * delta, 0.04 * delta};
  Eigen::Matrix3d m;
  Eigen::Vector3d rhs;
  for (int i = 0; i < 3; ++i) {
    const double e = amps[static_cast<std::size_t>(i)];
    m(i, 0) = 1.0;
    m(i, 1) = e * e;
    m(i, 2) = e * e * e * e;
    rhs(i) = area_symmetric_tripod(delta, shape.with_peak(e), grid) / e;
  }
  const Eigen::Vector3d c = m.colPivHouseholderQr().solve(rhs);
  r.linear_exact = c(0);
  r.cubic_exact = c(1);
  r.matching_form = std::abs(r.cubic_exact - r.cubic_dimensional) <=
                            std::abs(r.cubic_exact - r.cubic_printed)
                        ? CorrectionForm::dimensional
                        : CorrectionForm::printed;
  return r;
}

void write_report(std::ostream& os, const CubicCorrectionReport& r) {
  os << "delta                      " << csv::format(r.delta) << '\n'
     << "linear coeff (exact area)  " << csv::format(r.linear_exact) << '\n'
     << "linear coeff (pulse area)  " << csv::format(r.linear_pulse_area) << '\n'
     << "cubic coeff (exact area)   " << csv::format(r.cubic_exact) << '\n'
     << "cubic coeff Omega^2/4d^4   " << csv::format(r.cubic_printed) << '\n'
     << "cubic coeff Omega^2/4d^2   " << csv::format(r.cubic_dimensional) << '\n'
     << "matching correction        "
     << (r.matching_form == CorrectionForm::dimensional ? "Omega^2/(4 delta^2)"
                                                        : "Omega^2/(4 delta^4)")
     << '\n';
}

double generalized_area(const DressedBranches& branches, std::size_t i,
                        std::size_t j, const TimeGrid& grid) {
  const std::size_t dim = branches.dimension();
  if (i >= dim || j >= dim || i == j) {
    throw std::invalid_argument("generalized_area: need two distinct branch indices");
  }
  if (branches.times.size() != grid.size() ||
      std::abs(branches.times.front() - grid.start()) > 1e-12 * (1.0 + std::abs(grid.start())) ||
      std::abs(branches.times.back() - grid.end()) > 1e-12 * (1.0 + std::abs(grid.end()))) {
    throw std::invalid_argument("generalized_area: branches do not cover the grid");
  }
  std::vector<double> diff(grid.size());
  const auto ci = static_cast<Eigen::Index>(i);
  const auto cj = static_cast<Eigen::Index>(j);
  for (std::size_t k = 0; k < diff.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    diff[k] = branches.eigenvalues(row, ci) - branches.eigenvalues(row, cj);
  }
  return quadrature::simpson(diff, grid.step());
}

void write_adiabatic_csv(std::ostream& os, const AdiabaticResult& r) {
  csv::write_header(os, {"t", "re_a0", "im_a0", "re_a0p", "im_a0p", "cumulative_area"});
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    csv::write_row(os, {r.times[k], r.a0[k].real(), r.a0[k].imag(),
                        r.a0p[k].real(), r.a0p[k].imag(), r.cumulative_area[k]});
  }
}

}  // namespace aro
