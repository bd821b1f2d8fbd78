#include <cmath>
#include <numbers>
#include <sstream>

#include "aro/adiabatic.hpp"
#include "aro/propagator.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace aro;

namespace {

constexpr double pi = std::numbers::pi;

PulseSpec area_pulse(double s0) { return PulseSpec::default_gaussian(gaussian_peak_for_area(s0, 1.0)); }

}  // namespace

TEST_CASE("zero field: populations frozen, |0> has zero energy") {
  const auto pulse = PulseSpec::default_gaussian(0.0);
  const auto h = build_tripod(3.0, 0.0, pulse);
  const auto tr = propagate(h, StateVector::basis(4, 1), default_grid(pulse));
  CHECK(final_population(tr, 1) == 1.0);
  CHECK(final_population(tr, 3) == 0.0);
  CHECK(tr.states.back()(1) == Complex(1.0));

  // a ground state away from zero energy acquires only a phase e^{-i E t}
  const auto tr2 = propagate(h, StateVector::basis(4, 0), default_grid(pulse));
  const Complex expected = std::exp(Complex(0.0, 3.0 * 10.0));
  CHECK(std::abs(tr2.states.back()(0) - expected) < 1e-9);
  CHECK(final_population(tr2, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate tripod reduces to a bright-state two-level system") {
  for (double s0 : {0.5 * pi, pi, 2.3 * pi, 5.0 * pi}) {
    const auto pulse = area_pulse(s0);
    const auto tr = propagate(build_tripod(0.0, 0.0, pulse), StateVector::basis(4, 1), default_grid(pulse));
    const double s = std::sin(std::sqrt(3.0) * s0 / 2.0);
    CHECK(std::abs(final_population(tr, 3) - s * s / 3.0) < 1e-4);
  }
}

TEST_CASE("large splitting recovers the two-level pi pulse") {
  const auto pulse = area_pulse(pi);
  const auto h = build_tripod(1000.0, 0.0, pulse);
  // Stiff off-resonant levels: the default step keeps RK4 stable here and the
  // populated pair is resolved to well below the 1e-3 target.
  const auto tr = propagate(h, StateVector::basis(4, 1), default_grid(pulse));
  CHECK(std::abs(final_population(tr, 3) - 1.0) < 1e-3);
  CHECK(std::abs(final_population(tr, 3) - tls_population(1.0, 0.0, pi)) < 1e-3);
}

TEST_CASE("area pi and 2 pi pulses in the symmetric tripod") {
  // Omega0 root-found from the area oracle for A = pi and A = 2 pi
  auto run = [](double omega0) {
    const auto pulse = PulseSpec::default_gaussian(omega0);
    return final_population(propagate(build_tripod(5.0, 0.0, pulse), StateVector::basis(4, 1),
                                      default_grid(pulse)),
                            3);
  };
  CHECK(run(1.26492474076317) == doctest::Approx(0.999996914079146).epsilon(1e-7));
  CHECK(run(2.60569152439145) == doctest::Approx(9.19728275315937e-05).epsilon(1e-4));
}

TEST_CASE("RK4 agrees with an adaptive Dormand-Prince reference") {
  struct Case {
    int ng, ne;
    double delta, dp, det, omega0;
    std::size_t init;
  };
  for (const Case c : {Case{3, 1, 5.0, 0.0, 0.0, 9.0, 1}, Case{3, 1, 5.0, 0.0, -5.0, 14.0, 0},
                       Case{5, 5, 5.0, 4.0, 0.0, 10.0, 2}}) {
    const auto pulse = PulseSpec::default_gaussian(c.omega0);
    const auto h = build_ladder(c.ng, c.ne, c.delta, c.dp, c.det, pulse);
    const auto psi = propagate_final(h, StateVector::basis(h.dimension(), c.init), default_grid(pulse));
    const auto ref = oracle::dopri_final(oracle::Ladder::make(c.ng, c.ne, c.delta, c.dp, c.det, c.omega0),
                                         oracle::basis(h.dimension(), c.init));
    for (std::size_t i = 0; i < h.dimension(); ++i) {
      CHECK(std::abs(std::norm(psi(static_cast<Eigen::Index>(i))) - std::norm(ref[i])) < 1e-8);
    }
  }
}

TEST_CASE("norm conservation, step halving, orthogonality, time reversal") {
  const auto pulse = area_pulse(20.0 * pi);
  const auto h = build_tripod(5.0, 0.0, pulse);
  const TimeGrid grid = default_grid(pulse);
  const auto tr = propagate(h, StateVector::basis(4, 1), grid);
  CHECK(tr.norm_drift <= 1e-8);

  const auto fine = propagate(h, StateVector::basis(4, 1), TimeGrid(0.0, 10.0, 2 * grid.n_steps()));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(final_population(tr, i) - final_population(fine, i)) < 1e-8);

  const auto a = propagate_final(h, StateVector::basis(4, 0), grid);
  const auto b = propagate_final(h, StateVector::basis(4, 1), grid);
  CHECK(std::abs(a.dot(b)) < 1e-8);

  const auto back = propagate_final(h, StateVector(tr.states.back().normalized()), grid.reversed());
  CHECK((back - StateVector::basis(4, 1).amplitudes()).norm() < 1e-7);
}

TEST_CASE("populations sum to the stored norm; stride thins output") {
  const auto pulse = PulseSpec::default_gaussian(9.0);
  const auto h = build_tripod(5.0, 0.0, pulse);
  PropagationOptions opts;
  opts.stride = 7;
  const auto tr = propagate(h, StateVector::basis(4, 1), TimeGrid(0.0, 10.0, 1000), opts);
  CHECK(tr.times.size() == 1000 / 7 + 2);
  CHECK(tr.times.back() == 10.0);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(std::abs(tr.populations.row(static_cast<Eigen::Index>(k)).sum() - tr.norms[k]) <= 1e-12);
  }
}

TEST_CASE("error paths") {
  const auto pulse = PulseSpec::default_gaussian(50.0);
  const auto h = build_tripod(5.0, 0.0, pulse);
  CHECK_THROWS_AS(propagate(h, StateVector::basis(5, 1), default_grid(pulse)), std::invalid_argument);
  CHECK_THROWS_WITH_AS(propagate(h, StateVector::basis(4, 1), TimeGrid(0.0, 10.0, 400)),
                       doctest::Contains("smaller step"), NumericalError);
  CHECK_THROWS_AS(propagate(h, StateVector::basis(4, 1), TimeGrid(0.0, 10.0, 10)), NumericalError);
  CHECK_THROWS_AS(final_population(propagate(build_tripod(1.0, 0.0, PulseSpec::default_gaussian(0.0)),
                                              StateVector::basis(4, 1), TimeGrid(0.0, 1.0, 1)),
                                   4),
                  std::invalid_argument);
}

TEST_CASE("trajectory csv layout") {
  const auto h = build_tripod(1.0, 0.0, PulseSpec::default_gaussian(0.0));
  const auto tr = propagate(h, StateVector::basis(4, 1), TimeGrid(0.0, 10.0, 1));
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  CHECK(os.str() == "t,pop_1,pop_2,pop_3,pop_4,norm\n0,0,1,0,0,1\n10,0,1,0,0,1\n");
}
