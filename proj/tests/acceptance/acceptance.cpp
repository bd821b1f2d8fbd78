// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Thresholds are fixed here, not tuned to results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>

#include "aro/aro.hpp"
#include "runner.hpp"

using namespace aro;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome closed_form_spectrum() {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double delta = 0.1 + 9.9 * i / 199.0;
    const auto hd = build_tripod(delta, 0.0, PulseSpec::default_gaussian(0.0));
    for (int j = 0; j < 200; ++j) {
      const double chi = 20.0 * j / 199.0;
      const Eigen::VectorXd ev = hermitian_eigensystem(hd.at_field(2.0 * chi)).values;
      const auto l = analytic_tripod_eigenvalues(delta, chi);
      worst = std::max({worst, std::abs(ev(0) - l[2]), std::abs(ev(1) - l[0]), std::abs(ev(2) - l[1]),
                        std::abs(ev(3) - l[3])});
    }
  }
  return {worst < 1e-10, fmt("max |closed form - eigensolver| = %.3e over 200x200 (delta, chi) (< 1e-10)", worst)};
}

Outcome limit_laws() {
  double weak = 0.0;
  double strong = 0.0;
  for (double delta : {0.1, 0.5, 1.0, 5.0, 10.0}) {
    const double chi_w = delta / 100.0;
    const auto w = analytic_tripod_eigenvalues(delta, chi_w);
    weak = std::max({weak, std::abs(w[0] + chi_w) / chi_w, std::abs(w[1] - chi_w) / chi_w});
    const double chi_s = 100.0 * delta;
    const double lim = delta / std::sqrt(3.0);
    const auto s = analytic_tripod_eigenvalues(delta, chi_s);
    strong = std::max({strong, std::abs(s[0] + lim) / lim, std::abs(s[1] - lim) / lim});
  }
  return {weak < 0.01 && strong < 0.01,
          fmt("weak field rel. err %.3e, strong field rel. err %.3e (< 1e-2)", weak, strong)};
}

ScanSpec tripod_scan(double detuning, Level initial) {
  ScanSpec s;
  s.system.delta = 5.0;
  s.system.detuning = {DetuningRule::Kind::fixed, detuning};
  s.initial = initial;
  s.target = {Manifold::excited, 0};
  s.area_axis = {0.0, 20.0, 200};
  s.adiabatic = true;
  return s;
}

double max_gap(const ScanGrid& g, double* where) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.cols(); ++i) {
    const double e = std::abs(g.yield_tdse[i] - g.yield_adiabatic[i]);
    if (e > worst) {
      worst = e;
      *where = g.area_values[i];
    }
  }
  return worst;
}

Outcome area_theorem(double* drift) {
  const ScanGrid g = scan_area(tripod_scan(0.0, {Manifold::ground, 0}));
  *drift = g.max_norm_drift;
  double at = 0.0;
  const double worst = max_gap(g, &at);
  return {worst < 0.02, fmt("max |sin^2(A/2) - P_TDSE| = %.4f at S0 = %.2f pi, delta tau0 = 5, 200 points (< 0.02)",
                            worst, at)};
}

Outcome asymmetric_coincidence() {
  const ScanGrid g = scan_area(tripod_scan(-5.0, {Manifold::ground, -1}));
  double at = 0.0;
  const double worst = max_gap(g, &at);
  return {worst < 0.01,
          fmt("max |sin^2(A/2) - P_TDSE| = %.4f at S0 = %.2f pi, Delta = -delta, lowest dressed pair (< 0.01)", worst,
              at)};
}

Outcome saturation() {
  const TimeGrid grid(0.0, 10.0, 4000);
  const double a50 = area_symmetric_tripod(5.0, PulseSpec::default_gaussian(50.0), grid);
  const double a100 = area_symmetric_tripod(5.0, PulseSpec::default_gaussian(100.0), grid);
  const double tls = pulse_area(PulseSpec::default_gaussian(100.0), grid).area /
                     pulse_area(PulseSpec::default_gaussian(50.0), grid).area;
  const double ratio = a100 / a50;
  return {ratio < 1.25 && std::abs(tls - 2.0) < 1e-12,
          fmt("A(100)/A(50) = %.4f (< 1.25), pulse-area ratio = %.12f (= 2)", ratio, tls)};
}

Outcome tdse_integrity(double scan_drift) {
  const auto pulse = PulseSpec::default_gaussian(gaussian_peak_for_area(20.0 * pi, 1.0));
  const auto h = build_tripod(5.0, 0.0, pulse);
  const TimeGrid grid = default_grid(pulse);

  double drift = 0.0;
  const Eigen::VectorXcd b = propagate_final(h, StateVector::basis(4, 1), grid, 1e-6, &drift);
  drift = std::max(drift, scan_drift);
  const Eigen::VectorXcd fine = propagate_final(h, StateVector::basis(4, 1), TimeGrid(0.0, 10.0, 2 * grid.n_steps()));
  double halving = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) halving = std::max(halving, std::abs(std::norm(b(i)) - std::norm(fine(i))));

  double ortho = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      ortho = std::max(ortho, std::abs(propagate_final(h, StateVector::basis(4, i), grid)
                                           .dot(propagate_final(h, StateVector::basis(4, j), grid))));
    }
  }

  double degenerate = 0.0;
  double tls = 0.0;
  for (double s : {0.5, 1.0, 1.7, 2.3, 3.0, 5.0, 8.0}) {
    const double s0 = s * pi;
    const auto p = PulseSpec::default_gaussian(gaussian_peak_for_area(s0, 1.0));
    const Eigen::VectorXcd d = propagate_final(build_tripod(0.0, 0.0, p), StateVector::basis(4, 1), default_grid(p));
    const double sd = std::sin(std::sqrt(3.0) * s0 / 2.0);
    degenerate = std::max(degenerate, std::abs(std::norm(d(3)) - sd * sd / 3.0));
    const Eigen::VectorXcd t = propagate_final(build_tripod(1000.0, 0.0, p), StateVector::basis(4, 1), default_grid(p));
    const double st = std::sin(s0 / 2.0);
    tls = std::max(tls, std::abs(std::norm(t(3)) - st * st));
  }
  const bool pass = drift <= 1e-8 && halving < 1e-8 && ortho < 1e-8 && degenerate < 1e-4 && tls < 1e-3;
  return {pass, fmt("norm drift %.2e (<= 1e-8), step halving %.2e (< 1e-8), orthogonality %.2e (< 1e-8), "
                    "degenerate oracle %.2e (< 1e-4), two-level oracle %.2e (< 1e-3)",
                    drift, halving, ortho, degenerate, tls)};
}

Outcome small_intensity_series() {
  const auto r = cubic_correction_report(5.0, PulseSpec::default_gaussian(1.0), TimeGrid(0.0, 10.0, 4000));
  std::ostringstream os;
  write_report(os, r);
  const double rel = std::abs(r.linear_exact - r.linear_pulse_area) / r.linear_pulse_area;
  std::printf("%s", os.str().c_str());
  return {rel < 1e-9 && !os.str().empty(),
          fmt("linear coefficient rel. diff %.2e (< 1e-9); cubic coefficient %.6e, printed form %.6e, "
              "dimensional form %.6e, matching form: %s",
              rel, r.cubic_exact, r.cubic_printed, r.cubic_dimensional,
              r.matching_form == CorrectionForm::dimensional ? "Omega^2/(4 delta^2)" : "Omega^2/(4 delta^4)")};
}

Outcome ladder_visibility() {
  ScanSpec s;
  s.system = {5, 5, 5.0, 5.0, {DetuningRule::Kind::fixed, 0.0}, std::nullopt};
  s.initial = {Manifold::ground, 0};
  s.target = {Manifold::excited, 0};
  s.area_axis = {10.0, 30.0, 200};

  const auto t0 = std::chrono::steady_clock::now();
  const ScanGrid sym = scan_area(s);
  s.system.detuning = {DetuningRule::Kind::resonant, 0.0};
  s.target = {Manifold::excited, -2};
  const ScanGrid asym = scan_area(s);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const double v_sym = visibility(sym, 10.0, 30.0);
  const double v_asym = visibility(asym, 10.0, 30.0);
  return {v_sym > 0.9 && v_asym < v_sym && seconds < 180.0,
          fmt("visibility symmetric %.6f (> 0.9), target M'=-2 at resonant Delta = %+g %.6f (< symmetric), "
              "both grids %.1f s (< 180 s)",
              v_sym, asym.spec.system.make(5.0, s.initial, s.target).detuning(), v_asym, seconds)};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("aro_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  nlohmann::json doc = {
      {"system", {{"type", "tripod"}, {"delta_tau0", 5}, {"detuning_tau0", "resonant"}, {"initial", "g-1"}}},
      {"scan",
       {{"area_over_pi", {{"min", 0}, {"max", 10}, {"n", 41}}},
        {"delta_tau0", {{"min", 0.5}, {"max", 10}, {"n", 12}}},
        {"methods", {"tdse", "adiabatic"}}}},
      {"output", {{"basename", "det"}}}};
  const cli::RunConfig cfg = cli::from_json(doc, cli::Mode::scan_grid);
  std::vector<std::string> data;
  for (unsigned w : {1u, 2u, 5u}) {
    cli::RunOptions opts;
    opts.out_dir = root / std::to_string(w);
    opts.workers = w;
    cli::run(cfg, opts);
    std::ifstream f(*opts.out_dir / "det.scan.csv", std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    data.push_back(ss.str());
  }
  fs::remove_all(root);
  const bool same = data[0] == data[1] && data[0] == data[2] && !data[0].empty();
  return {same, fmt("scan-grid CSV (12 x 41, tdse + adiabatic) with 1, 2, 5 workers: %s (%zu bytes)",
                    same ? "byte-identical" : "DIFFERENT", data[0].size())};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  };

  double scan_drift = 0.0;
  report("closed-form vs numeric spectrum", closed_form_spectrum);
  report("limit laws", limit_laws);
  report("area theorem", [&] { return area_theorem(&scan_drift); });
  report("asymmetric coincidence", asymmetric_coincidence);
  report("coherent saturation", saturation);
  report("TDSE integrity", [&] { return tdse_integrity(scan_drift); });
  report("small-intensity series", small_intensity_series);
  report("ladder ARO", ladder_visibility);
  report("determinism", determinism);

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
