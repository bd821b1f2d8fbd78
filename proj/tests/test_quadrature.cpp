#include <cmath>
#include <vector>

#include "aro/quadrature.hpp"
#include "doctest.h"

using aro::quadrature::cumulative_simpson;
using aro::quadrature::simpson;

namespace {

std::vector<double> cubic_samples(std::size_t n_intervals, double h) {
  std::vector<double> f(n_intervals + 1);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double x = h * static_cast<double>(k);
    f[k] = x * x * x - 2.0 * x + 1.0;
  }
  return f;
}

double cubic_integral(double x) { return x * x * x * x / 4.0 - x * x + x; }

}  // namespace

TEST_CASE("simpson is exact for cubics on even and odd interval counts") {
  for (std::size_t n : {2u, 3u, 4u, 5u, 10u, 11u}) {
    const double h = 0.3;
    const auto f = cubic_samples(n, h);
    CHECK(simpson(f, h) == doctest::Approx(cubic_integral(h * static_cast<double>(n))).epsilon(1e-13));
  }
}

TEST_CASE("cumulative simpson tracks the running integral") {
  const double h = 0.01;
  std::vector<double> f(1001);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::cos(h * static_cast<double>(k));
  const auto c = cumulative_simpson(f, h);
  CHECK(c.front() == 0.0);
  for (std::size_t k = 0; k < c.size(); k += 37) {
    CHECK(c[k] == doctest::Approx(std::sin(h * static_cast<double>(k))).epsilon(1e-9));
  }
  CHECK(c.back() == doctest::Approx(simpson(f, h)).epsilon(1e-14));
}

TEST_CASE("two samples fall back to the trapezoid") {
  const std::vector<double> f{1.0, 3.0};
  CHECK(simpson(f, 0.5) == 1.0);
  CHECK_THROWS(simpson(std::vector<double>{1.0}, 1.0));
}
