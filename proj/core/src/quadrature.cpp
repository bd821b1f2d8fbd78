#include "aro/quadrature.hpp"

#include <stdexcept>

namespace aro::quadrature {

namespace {

double simpson_even(std::span<const double> f, double h) {
  // f.size() - 1 intervals, even
  double odd = 0.0;
  double even = 0.0;
  const std::size_t n = f.size() - 1;
  for (std::size_t k = 1; k < n; k += 2) odd += f[k];
  for (std::size_t k = 2; k < n; k += 2) even += f[k];
  return h / 3.0 * (f.front() + 4.0 * odd + 2.0 * even + f.back());
}

}  // namespace

double simpson(std::span<const double> samples, double step) {
  if (samples.size() < 2) {
    throw std::invalid_argument("simpson: need at least two samples");
  }
  const std::size_t n = samples.size() - 1;
  if (n == 1) return 0.5 * step * (samples[0] + samples[1]);
  if (n % 2 == 0) return simpson_even(samples, step);
  const auto tail = samples.subspan(n - 3);
  const double three_eighths =
      3.0 * step / 8.0 * (tail[0] + 3.0 * tail[1] + 3.0 * tail[2] + tail[3]);
  if (n == 3) return three_eighths;
  return simpson_even(samples.first(n - 2), step) + three_eighths;
}

std::vector<double> cumulative_simpson(std::span<const double> samples,
                                       double step) {
  if (samples.size() < 2) {
    throw std::invalid_argument("simpson: need at least two samples");
  }
  const std::size_t n = samples.size() - 1;
  std::vector<double> out(samples.size(), 0.0);
  if (n == 1) {
    out[1] = 0.5 * step * (samples[0] + samples[1]);
    return out;
  }
  for (std::size_t k = 2; k <= n; k += 2) {
    out[k] = out[k - 2] +
             step / 3.0 * (samples[k - 2] + 4.0 * samples[k - 1] + samples[k]);
  }
  for (std::size_t k = 1; k <= n; k += 2) {
    // quadratic through three neighbouring samples, integrated over one panel
    if (k + 1 <= n) {
      out[k] = out[k - 1] +
               step / 12.0 * (5.0 * samples[k - 1] + 8.0 * samples[k] -
                              samples[k + 1]);
    } else {
      out[k] = out[k - 1] +
               step / 12.0 * (-samples[k - 2] + 8.0 * samples[k - 1] +
                              5.0 * samples[k]);
    }
  }
  if (n % 2 == 1) out[n] = simpson(samples, step);
  return out;
}

}  // namespace aro::quadrature
