#pragma once

#include <span>
#include <vector>

namespace aro::quadrature {

/// Composite Simpson rule over uniformly spaced samples. Odd interval counts
/// close with a 3/8 panel; two samples fall back to the trapezoid.
double simpson(std::span<const double> samples, double step);

/// Running integral from the first sample to every sample. Even indices are
/// exact composite-Simpson partial sums; odd indices add a three-point
/// single-interval panel.
std::vector<double> cumulative_simpson(std::span<const double> samples,
                                       double step);

}  // namespace aro::quadrature
