#pragma once

// Adiabatic-limit analytics: the two-level Rabi formula, the closed-form
// symmetric-tripod amplitudes, and pulse-area functionals built from dressed
// branch energies.

#include <iosfwd>
#include <vector>

#include "aro/spectral.hpp"

namespace aro {

/// Two-level excitation probability under a constant field,
/// (Omega0^2 / Omega_eff^2) sin^2(Omega_eff t / 2), Omega_eff^2 = Omega0^2 + Delta^2.
double tls_population(double omega0, double detuning, double t);

/// Closed-form adiabatic solution of the symmetric tripod started in |0>.
struct AdiabaticResult {
  std::vector<double> times;
  std::vector<Complex> a0;
  std::vector<Complex> a0p;
  /// 2 * int_0^t lambda2 dt'
  std::vector<double> cumulative_area;
  double area = 0.0;
  /// Grid coarser than 200 points per tau0.
  bool coarse_grid_warning = false;
};

/// Amplitude prefactors of |0> and |0'> (|0'> prefactor without the factor i).
struct AdiabaticPrefactors {
  double ground = 1.0;
  double excited = 1.0;
};

/// Below this chi/delta the prefactors take their exact zero-field limits.
inline constexpr double kZeroFieldRatio = 1e-8;

AdiabaticPrefactors adiabatic_prefactors(double delta, double chi);

AdiabaticResult adiabatic_amplitudes(double delta, const PulseSpec& pulse,
                                     const TimeGrid& grid);

/// 2 * int lambda2(t) dt over the grid (symmetric tripod, Delta = 0).
double area_symmetric_tripod(double delta, const PulseSpec& pulse,
                             const TimeGrid& grid);

/// Correction term in the small-intensity expansion of the area:
/// `printed` uses Omega^2 / (4 delta^4), `dimensional` uses Omega^2 / (4 delta^2).
enum class CorrectionForm { printed, dimensional };

struct SmallIntensityArea {
  double area = 0.0;
  double exact_area = 0.0;
  double pulse_area = 0.0;
  /// (area - exact_area) / exact_area, or 0 when exact_area is 0.
  double relative_error = 0.0;
  CorrectionForm form = CorrectionForm::printed;
  /// Omega0 >= delta: expansion used outside its range of validity.
  bool outside_validity = false;
};

SmallIntensityArea area_small_intensity(
    double delta, const PulseSpec& pulse, const TimeGrid& grid,
    CorrectionForm form = CorrectionForm::printed);

/// Leading-order behaviour of the exact symmetric-tripod area for weak
/// pulses: A(Omega0) = c1 Omega0 + c3 Omega0^3 + O(Omega0^5).
struct CubicCorrectionReport {
  double delta = 0.0;
  /// c1 from the exact area versus the pulse area per unit Omega0.
  double linear_exact = 0.0;
  double linear_pulse_area = 0.0;
  double cubic_exact = 0.0;
  double cubic_printed = 0.0;
  double cubic_dimensional = 0.0;
  CorrectionForm matching_form = CorrectionForm::dimensional;
};

CubicCorrectionReport cubic_correction_report(double delta, const PulseSpec& shape,
                                              const TimeGrid& grid);

void write_report(std::ostream& os, const CubicCorrectionReport& report);

/// int (lambda_i - lambda_j) dt over tracked branches sampled on `grid`.
double generalized_area(const DressedBranches& branches, std::size_t i,
                        std::size_t j, const TimeGrid& grid);

/// Columns t, re_a0, im_a0, re_a0p, im_a0p, cumulative_area.
void write_adiabatic_csv(std::ostream& os, const AdiabaticResult& result);

}  // namespace aro
