#include "aro/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "aro/quadrature.hpp"

namespace aro {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

PulseSpec::PulseSpec(PulseShape shape, double omega0, double tau0, double tc,
                     TimeWindow window)
    : shape_(shape), omega0_(omega0), tau0_(tau0), tc_(tc), window_(window) {
  require(std::isfinite(omega0) && omega0 >= 0.0,
          "pulse: omega0 must be finite and >= 0");
  require(std::isfinite(tau0) && tau0 > 0.0, "pulse: tau0 must be > 0");
  require(std::isfinite(tc), "pulse: tc must be finite");
  require(std::isfinite(window.start) && std::isfinite(window.end) &&
              window.start < window.end,
          "pulse: window start must precede window end");
}

PulseSpec PulseSpec::gaussian(double omega0, double tau0, double tc,
                              TimeWindow window) {
  return PulseSpec(PulseShape::gaussian, omega0, tau0, tc, window);
}

PulseSpec PulseSpec::constant(double omega0, TimeWindow window, double tau0) {
  return PulseSpec(PulseShape::constant, omega0, tau0,
                   0.5 * (window.start + window.end), window);
}

PulseSpec PulseSpec::default_gaussian(double omega0, double tau0) {
  const double tc = 5.0 * tau0;
  return gaussian(omega0, tau0, tc, {0.0, 2.0 * tc});
}

double PulseSpec::value(double t) const {
  switch (shape_) {
    case PulseShape::gaussian: {
      const double x = (t - tc_) / tau0_;
      return omega0_ * std::exp(-0.5 * x * x);
    }
    case PulseShape::constant:
      return (t >= window_.start && t <= window_.end) ? omega0_ : 0.0;
  }
  return 0.0;
}

double PulseSpec::analytic_area() const {
  switch (shape_) {
    case PulseShape::gaussian:
      return std::sqrt(2.0 * std::numbers::pi) * omega0_ * tau0_;
    case PulseShape::constant:
      return omega0_ * window_.length();
  }
  return 0.0;
}

PulseSpec PulseSpec::with_peak(double omega0) const {
  return PulseSpec(shape_, omega0, tau0_, tc_, window_);
}

double gaussian_peak_for_area(double s0, double tau0) {
  return s0 / (std::sqrt(2.0 * std::numbers::pi) * tau0);
}

TimeGrid::TimeGrid(double start, double end, std::size_t n_steps)
    : start_(start), end_(end), n_steps_(n_steps) {
  require(n_steps >= 1, "time grid: n_steps must be >= 1");
  require(std::isfinite(start) && std::isfinite(end) && start != end,
          "time grid: endpoints must be finite and distinct");
}

TimeGrid TimeGrid::over(const TimeWindow& window, double tau0,
                        double steps_per_tau0) {
  require(steps_per_tau0 > 0.0, "time grid: steps per tau0 must be > 0");
  const double n = std::ceil(steps_per_tau0 * window.length() / tau0 - 1e-9);
  return TimeGrid(window.start, window.end,
                  static_cast<std::size_t>(std::max(1.0, n)));
}

double TimeGrid::time(std::size_t k) const {
  if (k == n_steps_) return end_;
  return start_ + static_cast<double>(k) * step();
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = time(k);
  return out;
}

double pulse_value(const PulseSpec& pulse, double t) { return pulse.value(t); }

PulseAreaResult pulse_area(const PulseSpec& pulse, const TimeGrid& grid) {
  std::vector<double> samples(grid.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    samples[k] = pulse.value(grid.time(k));
  }
  PulseAreaResult result;
  result.area = quadrature::simpson(samples, grid.step());

  const double lo = std::min(grid.start(), grid.end());
  const double hi = std::max(grid.start(), grid.end());
  if (pulse.shape() == PulseShape::gaussian) {
    const double scale = std::numbers::sqrt2 * pulse.tau0();
    const double inside = 0.5 * (std::erf((hi - pulse.tc()) / scale) -
                                 std::erf((lo - pulse.tc()) / scale));
    result.truncated_fraction = 1.0 - inside;
  } else {
    const auto& w = pulse.window();
    const double covered =
        std::max(0.0, std::min(hi, w.end) - std::max(lo, w.start));
    result.truncated_fraction = 1.0 - covered / w.length();
  }
  result.truncation_warning = result.truncated_fraction > 1e-3;
  if (grid.step() < 0.0) result.area = -result.area;
  return result;
}

std::string to_string(const Level& level) {
  std::ostringstream os;
  os << (level.manifold == Manifold::ground ? "g" : "e") << level.m;
  return os.str();
}

LevelScheme::LevelScheme(int n_ground, int n_excited, double delta,
                         double delta_prime, double detuning,
                         Eigen::MatrixXd coupling_weights)
    : n_ground_(n_ground),
      n_excited_(n_excited),
      delta_(delta),
      delta_prime_(delta_prime),
      detuning_(detuning),
      weights_(std::move(coupling_weights)) {
  require(n_ground >= 1 && n_excited >= 1,
          "level scheme: manifold sizes must be >= 1");
  require(n_ground % 2 == 1 && n_excited % 2 == 1,
          "level scheme: manifold sizes must be odd so that M runs "
          "symmetrically about 0 (got " +
              std::to_string(n_ground) + "+" + std::to_string(n_excited) +
              ")");
  require(std::isfinite(delta) && std::isfinite(delta_prime) &&
              std::isfinite(detuning),
          "level scheme: splittings and detuning must be finite");
  require(weights_.rows() == n_ground && weights_.cols() == n_excited,
          "level scheme: coupling weights must be n_ground x n_excited");
  require(weights_.allFinite(), "level scheme: coupling weights must be finite");
}

LevelScheme::LevelScheme(int n_ground, int n_excited, double delta,
                         double delta_prime, double detuning)
    : LevelScheme(n_ground, n_excited, delta, delta_prime, detuning,
                  Eigen::MatrixXd::Ones(std::max(n_ground, 0),
                                        std::max(n_excited, 0))) {}

LevelScheme LevelScheme::tripod(double delta, double detuning) {
  return LevelScheme(3, 1, delta, 0.0, detuning);
}

bool LevelScheme::contains(const Level& level) const {
  const int half =
      level.manifold == Manifold::ground ? half_ground() : half_excited();
  return level.m >= -half && level.m <= half;
}

std::size_t LevelScheme::index_of(const Level& level) const {
  if (!contains(level)) {
    throw std::invalid_argument("level scheme: no level " + to_string(level));
  }
  if (level.manifold == Manifold::ground) {
    return static_cast<std::size_t>(level.m + half_ground());
  }
  return static_cast<std::size_t>(n_ground_ + level.m + half_excited());
}

Level LevelScheme::level_at(std::size_t index) const {
  require(index < dimension(), "level scheme: index out of range");
  const int i = static_cast<int>(index);
  if (i < n_ground_) return {Manifold::ground, i - half_ground()};
  return {Manifold::excited, i - n_ground_ - half_excited()};
}

double LevelScheme::bare_energy(std::size_t index) const {
  const Level level = level_at(index);
  if (level.manifold == Manifold::ground) return delta_ * level.m;
  return delta_prime_ * level.m + detuning_;
}

Eigen::VectorXd LevelScheme::bare_energies() const {
  Eigen::VectorXd e(static_cast<Eigen::Index>(dimension()));
  for (std::size_t i = 0; i < dimension(); ++i) {
    e(static_cast<Eigen::Index>(i)) = bare_energy(i);
  }
  return e;
}

double LevelScheme::resonant_detuning(const Level& from, const Level& to) const {
  require(contains(from) && contains(to), "level scheme: unknown level");
  require(from.manifold != to.manifold,
          "level scheme: resonance needs one ground and one excited level");
  const Level& g = from.manifold == Manifold::ground ? from : to;
  const Level& e = from.manifold == Manifold::ground ? to : from;
  return delta_ * g.m - delta_prime_ * e.m;
}

StateVector::StateVector(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  require(amplitudes_.size() > 0, "state vector: empty");
  require(amplitudes_.allFinite(), "state vector: non-finite amplitude");
  require(std::abs(amplitudes_.squaredNorm() - 1.0) <= 1e-12,
          "state vector: amplitudes must have unit norm");
}

StateVector StateVector::basis(std::size_t dimension, std::size_t index) {
  require(index < dimension, "state vector: basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::permuted(const std::vector<std::size_t>& order) const {
  require(order.size() == dimension(), "state vector: permutation size mismatch");
  Eigen::VectorXcd v(amplitudes_.size());
  std::vector<bool> seen(order.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    require(order[i] < order.size() && !seen[order[i]],
            "state vector: not a permutation");
    seen[order[i]] = true;
    v(static_cast<Eigen::Index>(i)) = (*this)[order[i]];
  }
  return StateVector(std::move(v));
}

}  // namespace aro
