#include "aro/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "aro/csv.hpp"

namespace aro {

namespace {

void fix_phase(Eigen::MatrixXcd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index largest = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, k));
      if (a > best) {
        best = a;
        largest = i;
      }
    }
    const Complex c = vectors(largest, k);
    if (best > 0.0) vectors.col(k) *= std::conj(c) / best;
    vectors(largest, k) = best;
  }
}

// Numerically stable inner radicand: delta^2 + 3chi^2 - D^2 rewritten as
// 4 delta^2 chi^2 / (delta^2 + 3chi^2 + D^2), with D^2 the quoted root.
struct TripodRadicands {
  double inner;
  double outer;
};

TripodRadicands tripod_radicands(double delta, double chi) {
  const double d2 = delta * delta;
  const double c2 = chi * chi;
  const double big_d2 = std::sqrt(d2 * d2 + 2.0 * c2 * d2 + 9.0 * c2 * c2);
  const double sum = d2 + 3.0 * c2 + big_d2;
  double inner = sum > 0.0 ? 4.0 * d2 * c2 / sum : 0.0;
  if (inner < 0.0 && inner > -1e-12) inner = 0.0;
  return {inner, sum};
}

}  // namespace

Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& matrix) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian eigensolver did not converge");
  }
  Eigensystem out{solver.eigenvalues(), solver.eigenvectors()};
  fix_phase(out.vectors);
  return out;
}

Eigensystem dressed_spectrum(const RwaHamiltonian& h, double t) {
  return hermitian_eigensystem(h.evaluate(t));
}

std::array<double, 4> analytic_tripod_eigenvalues(double delta, double chi) {
  const auto r = tripod_radicands(delta, chi);
  const double inner = std::sqrt(0.5 * r.inner);
  const double outer = std::sqrt(0.5 * r.outer);
  return {-inner, inner, -outer, outer};
}

double tripod_inner_eigenvalue(double delta, double chi) {
  return std::sqrt(0.5 * tripod_radicands(delta, chi).inner);
}

double tlds_gap(double delta, double chi) {
  return 2.0 * tripod_inner_eigenvalue(delta, chi);
}

std::vector<std::size_t> DressedBranches::populated_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < populated.size(); ++k) {
    if (populated[k]) out.push_back(k);
  }
  return out;
}

DressedBranches track_branches(const RwaHamiltonian& h, const TimeGrid& grid,
                               const StateVector& initial) {
  const std::size_t dim = h.dimension();
  if (initial.dimension() != dim) {
    throw std::invalid_argument("track_branches: initial state dimension mismatch");
  }
  const auto n = static_cast<Eigen::Index>(dim);

  DressedBranches out;
  out.times = grid.times();
  out.eigenvalues.resize(static_cast<Eigen::Index>(grid.size()), n);
  out.eigenvectors.reserve(grid.size());

  Eigensystem first = dressed_spectrum(h, out.times.front());
  out.eigenvalues.row(0) = first.values.transpose();
  out.eigenvectors.push_back(first.vectors);

  std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
  pairs.reserve(dim * dim);
  std::vector<Eigen::Index> assigned(dim);
  std::vector<bool> taken(dim);

  for (std::size_t k = 1; k < grid.size(); ++k) {
    const Eigensystem cur = dressed_spectrum(h, out.times[k]);
    const Eigen::MatrixXcd& prev = out.eigenvectors.back();
    const Eigen::MatrixXd overlap = (prev.adjoint() * cur.vectors).cwiseAbs();

    pairs.clear();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
      return overlap(a.first, a.second) > overlap(b.first, b.second);
    });
    std::fill(assigned.begin(), assigned.end(), Eigen::Index{-1});
    std::fill(taken.begin(), taken.end(), false);
    for (const auto& [i, j] : pairs) {
      if (assigned[static_cast<std::size_t>(i)] >= 0 || taken[static_cast<std::size_t>(j)]) continue;
      assigned[static_cast<std::size_t>(i)] = j;
      taken[static_cast<std::size_t>(j)] = true;
    }

    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index j = assigned[static_cast<std::size_t>(i)];
      const double best = overlap(i, j);
      if (best <= 0.5) {
        throw NumericalError(
            "track_branches: eigenvector overlap " + std::to_string(best) +
            " at t=" + csv::format(out.times[k]) +
            " fell below 0.5; use a finer time grid");
      }
      for (Eigen::Index other = 0; other < n; ++other) {
        if (other != j && std::abs(best - overlap(i, other)) < 1e-6) {
          throw NumericalError(
              "track_branches: ambiguous branch assignment at t=" +
              csv::format(out.times[k]) + "; use a finer time grid");
        }
      }
    }

    Eigen::MatrixXcd vectors(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index j = assigned[static_cast<std::size_t>(i)];
      out.eigenvalues(static_cast<Eigen::Index>(k), i) = cur.values(j);
      vectors.col(i) = cur.vectors.col(j);
    }
    out.eigenvectors.push_back(std::move(vectors));
  }

  const Eigen::VectorXcd weights =
      out.eigenvectors.front().adjoint() * initial.amplitudes();
  out.initial_weights.resize(dim);
  out.populated.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    out.initial_weights[i] = std::norm(weights(static_cast<Eigen::Index>(i)));
    out.populated[i] = out.initial_weights[i] > kPopulatedThreshold;
  }
  return out;
}

void write_branches_csv(std::ostream& os, const DressedBranches& branches) {
  const std::size_t dim = branches.dimension();
  std::vector<std::string> header{"t"};
  for (std::size_t i = 1; i <= dim; ++i) header.push_back("lambda_" + std::to_string(i));
  for (std::size_t i = 1; i <= dim; ++i) header.push_back("populated_" + std::to_string(i));
  csv::write_header(os, header);

  std::vector<double> row(1 + 2 * dim);
  for (std::size_t k = 0; k < branches.times.size(); ++k) {
    row[0] = branches.times[k];
    for (std::size_t i = 0; i < dim; ++i) {
      row[1 + i] = branches.eigenvalues(static_cast<Eigen::Index>(k),
                                        static_cast<Eigen::Index>(i));
      row[1 + dim + i] = branches.populated[i] ? 1.0 : 0.0;
    }
    csv::write_row(os, row);
  }
}

}  // namespace aro
