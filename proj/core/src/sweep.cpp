#include "aro/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <thread>

#include "aro/adiabatic.hpp"
#include "aro/csv.hpp"
#include "aro/propagator.hpp"
#include "aro/spectral.hpp"
#include "aro/version.hpp"

namespace aro {

double Axis::at(std::size_t i) const {
  if (i + 1 == n) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::vector<double> Axis::values() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i);
  return out;
}

LevelScheme SystemTemplate::make(double d, const Level& initial,
                                 const Level& target) const {
  const double dp = delta_prime.value_or(d);
  auto build = [&](double detuning) {
    if (weights) return LevelScheme(n_ground, n_excited, d, dp, detuning, *weights);
    return LevelScheme(n_ground, n_excited, d, dp, detuning);
  };
  if (detuning.kind == DetuningRule::Kind::fixed) return build(detuning.value);
  return build(build(0.0).resonant_detuning(initial, target));
}

PulseSpec PulseTemplate::with_area(double s0) const {
  if (shape == PulseShape::gaussian) {
    return PulseSpec::gaussian(gaussian_peak_for_area(s0, tau0), tau0, tc, window);
  }
  return PulseSpec::constant(s0 / window.length(), window, tau0);
}

bool is_symmetric_tripod(const LevelScheme& scheme, const Level& initial,
                         const Level& target) {
  return scheme.n_ground() == 3 && scheme.n_excited() == 1 &&
         scheme.detuning() == 0.0 &&
         (scheme.coupling_weights().array() == 1.0).all() &&
         initial == Level{Manifold::ground, 0} &&
         target == Level{Manifold::excited, 0};
}

namespace {

void validate(const ScanSpec& spec) {
  auto check_axis = [](const Axis& a, const char* name) {
    if (a.n < 2) {
      throw std::invalid_argument(std::string("scan: ") + name + " axis needs n >= 2");
    }
    if (!(std::isfinite(a.min) && std::isfinite(a.max)) || a.max < a.min) {
      throw std::invalid_argument(std::string("scan: ") + name + " axis needs min <= max");
    }
  };
  check_axis(spec.area_axis, "area");
  if (spec.area_axis.min < 0.0) {
    throw std::invalid_argument("scan: area axis min must be >= 0");
  }
  if (spec.delta_axis) check_axis(*spec.delta_axis, "delta");
  const LevelScheme probe = spec.system.make(
      spec.delta_axis ? spec.delta_axis->min / spec.pulse.tau0 : spec.system.delta,
      spec.initial, spec.target);
  if (!probe.contains(spec.initial) || !probe.contains(spec.target)) {
    throw std::invalid_argument("scan: initial/target level not in the level scheme");
  }
  if (spec.initial == spec.target) {
    throw std::invalid_argument("scan: initial and target levels coincide");
  }
}

struct PointResult {
  double tdse = 0.0;
  double adiabatic = 0.0;
  double drift = 0.0;
};

PointResult evaluate_point(const ScanSpec& spec, double delta, double s0_over_pi) {
  const double s0 = s0_over_pi * std::numbers::pi;
  const LevelScheme scheme = spec.system.make(delta, spec.initial, spec.target);
  const PulseSpec pulse = spec.pulse.with_area(s0);
  const RwaHamiltonian h(scheme, pulse);
  const StateVector psi0 =
      StateVector::basis(scheme.dimension(), scheme.index_of(spec.initial));
  const TimeGrid grid = default_grid(pulse, spec.steps_per_tau0);

  PointResult r;
  const Eigen::VectorXcd psi = propagate_final(h, psi0, grid, 1e-6, &r.drift);
  r.tdse = std::norm(psi(static_cast<Eigen::Index>(scheme.index_of(spec.target))));
  if (spec.adiabatic) r.adiabatic = adiabatic_yield(spec, delta, s0);
  return r;
}

std::string point_label(double s0_over_pi, std::optional<double> delta_tau0) {
  std::string s = "S0/pi=" + csv::format(s0_over_pi);
  if (delta_tau0) s += ", delta*tau0=" + csv::format(*delta_tau0);
  return s;
}

ScanGrid run_scan(const ScanSpec& spec, unsigned workers) {
  validate(spec);
  ScanGrid grid;
  grid.spec = spec;
  grid.version = kVersion;
  grid.area_values = spec.area_axis.values();
  if (spec.delta_axis) {
    grid.delta_values = spec.delta_axis->values();
  } else {
    grid.delta_values = {spec.system.delta * spec.pulse.tau0};
  }
  grid.integrator_step =
      default_grid(spec.pulse.with_area(0.0), spec.steps_per_tau0).step();

  const std::size_t cols = grid.cols();
  const std::size_t total = grid.rows() * cols;
  std::vector<PointResult> results(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};

  auto worker = [&] {
    for (;;) {
      if (abort.load(std::memory_order_relaxed)) return;
      const std::size_t idx = next.fetch_add(1, std::memory_order_relaxed);
      if (idx >= total) return;
      const double delta = grid.delta_values[idx / cols] / spec.pulse.tau0;
      try {
        results[idx] = evaluate_point(spec, delta, grid.area_values[idx % cols]);
      } catch (...) {
        errors[idx] = std::current_exception();
        abort.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!errors[idx]) continue;
    const auto label = point_label(
        grid.area_values[idx % cols],
        spec.delta_axis ? std::optional<double>(grid.delta_values[idx / cols])
                        : std::nullopt);
    try {
      std::rethrow_exception(errors[idx]);
    } catch (const NumericalError& e) {
      throw NumericalError("scan point " + label + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::invalid_argument("scan point " + label + ": " + e.what());
    }
  }

  grid.yield_tdse.resize(total);
  if (spec.adiabatic) grid.yield_adiabatic.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    grid.yield_tdse[idx] = results[idx].tdse;
    if (spec.adiabatic) grid.yield_adiabatic[idx] = results[idx].adiabatic;
    grid.max_norm_drift = std::max(grid.max_norm_drift, results[idx].drift);
  }
  return grid;
}

}  // namespace

double adiabatic_yield(const ScanSpec& spec, double delta, double s0) {
  const LevelScheme scheme = spec.system.make(delta, spec.initial, spec.target);
  const PulseSpec pulse = spec.pulse.with_area(s0);
  const TimeGrid grid = default_grid(pulse, spec.dressed_points_per_tau0);
  // no field, no dressing: the initial level stays put
  if (pulse.omega0() == 0.0) return 0.0;

  double area = 0.0;
  if (is_symmetric_tripod(scheme, spec.initial, spec.target)) {
    area = area_symmetric_tripod(delta, pulse, grid);
  } else {
    const RwaHamiltonian h(scheme, pulse);
    const auto psi0 =
        StateVector::basis(scheme.dimension(), scheme.index_of(spec.initial));
    const DressedBranches branches = track_branches(h, grid, psi0);
    const auto populated = branches.populated_indices();
    if (populated.size() != 2) {
      throw std::invalid_argument(
          "adiabatic yield needs exactly two populated dressed branches, found " +
          std::to_string(populated.size()));
    }
    area = generalized_area(branches, populated[1], populated[0], grid);
  }
  const double s = std::sin(0.5 * area);
  return s * s;
}

ScanGrid scan_area(const ScanSpec& spec, unsigned workers) {
  if (spec.delta_axis) {
    throw std::invalid_argument("scan_area: delta axis must be absent (use scan_area_delta)");
  }
  return run_scan(spec, workers);
}

ScanGrid scan_area_delta(const ScanSpec& spec, unsigned workers) {
  if (!spec.delta_axis) {
    throw std::invalid_argument("scan_area_delta: delta axis required");
  }
  return run_scan(spec, workers);
}

double visibility(std::span<const double> area_values,
                  std::span<const double> yields, double lo, double hi) {
  if (area_values.size() != yields.size()) {
    throw std::invalid_argument("visibility: axis and yield sizes differ");
  }
  double mx = -1.0;
  double mn = 2.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < yields.size(); ++i) {
    if (area_values[i] < lo || area_values[i] > hi) continue;
    mx = std::max(mx, yields[i]);
    mn = std::min(mn, yields[i]);
    ++count;
  }
  if (count < 5) {
    throw std::invalid_argument("visibility: window holds " + std::to_string(count) +
                                " grid points, need at least 5");
  }
  if (mx + mn <= 0.0) return 0.0;
  return (mx - mn) / (mx + mn);
}

double visibility(const ScanGrid& grid, double lo, double hi, std::size_t row) {
  if (row >= grid.rows()) throw std::invalid_argument("visibility: row out of range");
  return visibility(grid.area_values, grid.tdse_row(row), lo, hi);
}

void write_scan_csv(std::ostream& os, const ScanGrid& grid) {
  std::vector<std::string> header{"s0_over_pi"};
  if (grid.two_dimensional()) header.emplace_back("delta_tau0");
  header.emplace_back("yield_tdse");
  if (grid.has_adiabatic()) header.emplace_back("yield_adiabatic");
  csv::write_header(os, header);

  std::vector<double> row;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const std::size_t idx = r * grid.cols() + c;
      row.clear();
      row.push_back(grid.area_values[c]);
      if (grid.two_dimensional()) row.push_back(grid.delta_values[r]);
      row.push_back(grid.yield_tdse[idx]);
      if (grid.has_adiabatic()) row.push_back(grid.yield_adiabatic[idx]);
      csv::write_row(os, row);
    }
  }
}

}  // namespace aro
