#pragma once

// Test-only reference computations. Nothing here calls into the aro library:
// eigenvalues come from the tripod secular equation, integrals from the
// trapezoid rule (spectrally accurate for Gaussian-decaying integrands),
// and dynamics from an adaptive Dormand-Prince integrator.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace oracle {

using cplx = std::complex<double>;

inline double gaussian(double omega0, double t, double tc = 5.0, double tau0 = 1.0) {
  const double x = (t - tc) / tau0;
  return omega0 * std::exp(-0.5 * x * x);
}

/// g(l) = l - Delta + chi^2 sum_M 1/(delta M - l); its four roots are the
/// tripod eigenvalues. Requires delta > 0, chi > 0.
inline std::array<double, 4> tripod_eigenvalues(double delta, double detuning,
                                                double chi) {
  auto g = [&](double l) {
    double s = 0.0;
    for (int m = -1; m <= 1; ++m) s += 1.0 / (delta * m - l);
    return l - detuning + chi * chi * s;
  };
  auto bisect = [&](double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double bound = std::abs(detuning) + delta + 3.0 * chi + 1.0;
  const double eps = 1e-300;
  return {bisect(-bound, -delta - eps), bisect(-delta + eps, -eps),
          bisect(eps, delta - eps), bisect(delta + eps, bound)};
}

inline double trapezoid(const std::function<double(double)>& f, double a,
                        double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int k = 1; k < n; ++k) s += f(a + k * h);
  return s * h;
}

/// 2 * int lambda2 dt for the symmetric tripod with a Gaussian of peak omega0.
inline double symmetric_area(double delta, double omega0, double t_end = 10.0,
                             int n = 20000) {
  return 2.0 * trapezoid(
                   [&](double t) {
                     const double chi = 0.5 * gaussian(omega0, t);
                     if (chi == 0.0) return 0.0;
                     return tripod_eigenvalues(delta, 0.0, chi)[2];
                   },
                   0.0, t_end, n);
}

/// Generalized area between the two lowest branches of the asymmetric tripod.
inline double lowest_pair_area(double delta, double detuning, double omega0,
                               double t_end = 10.0, int n = 20000) {
  return trapezoid(
      [&](double t) {
        const double chi = 0.5 * gaussian(omega0, t);
        const auto l = tripod_eigenvalues(delta, detuning, std::max(chi, 1e-300));
        return l[1] - l[0];
      },
      0.0, t_end, n);
}

/// Dense real symmetric H(t) = diag(bare) + Omega(t) C for a ground/excited
/// ladder with all couplings -Omega/2.
struct Ladder {
  std::vector<double> bare;
  int n_ground;
  int n_excited;
  double omega0;

  static Ladder make(int ng, int ne, double delta, double delta_prime,
                     double detuning, double omega0) {
    Ladder l{{}, ng, ne, omega0};
    for (int i = 0; i < ng; ++i) l.bare.push_back(delta * (i - (ng - 1) / 2));
    for (int i = 0; i < ne; ++i) {
      l.bare.push_back(delta_prime * (i - (ne - 1) / 2) + detuning);
    }
    return l;
  }

  std::size_t dim() const { return bare.size(); }
};

/// Final state of i dpsi/dt = H psi from Dormand-Prince 5(4), tolerance 1e-12.
inline std::vector<cplx> dopri_final(const Ladder& sys, std::vector<cplx> psi,
                                     double t0 = 0.0, double t1 = 10.0) {
  namespace ode = boost::numeric::odeint;
  using state = std::vector<cplx>;
  const std::size_t ng = static_cast<std::size_t>(sys.n_ground);
  auto rhs = [&](const state& y, state& dy, double t) {
    const double half = -0.5 * gaussian(sys.omega0, t);
    cplx sg = 0.0;
    cplx se = 0.0;
    for (std::size_t i = 0; i < ng; ++i) sg += y[i];
    for (std::size_t i = ng; i < y.size(); ++i) se += y[i];
    for (std::size_t i = 0; i < y.size(); ++i) {
      const cplx hy = sys.bare[i] * y[i] + half * (i < ng ? se : sg);
      dy[i] = cplx(hy.imag(), -hy.real());
    }
  };
  ode::integrate_adaptive(
      ode::make_controlled(1e-12, 1e-12, ode::runge_kutta_dopri5<state>()), rhs,
      psi, t0, t1, 1e-4);
  return psi;
}

inline std::vector<cplx> basis(std::size_t n, std::size_t k) {
  std::vector<cplx> v(n, 0.0);
  v[k] = 1.0;
  return v;
}

}  // namespace oracle
