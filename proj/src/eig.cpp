#include "hamspec/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hamspec {
namespace {

void require_square(const RealMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << a.rows() << "x"
       << a.cols();
    throw Error(ErrorKind::kDimension, os.str());
  }
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

template <typename Vec>
void normalize_phase(Vec& v) {
  v.normalize();
  const double cutoff = 1e-12;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > cutoff) {
      const auto phase = std::conj(Complex(v(i))) / mag;
      for (Eigen::Index k = 0; k < v.size(); ++k) v(k) *= phase;
      return;
    }
  }
}

}  // namespace

void sort_spectrum(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](Complex l, Complex r) {
    if (l.real() != r.real()) return l.real() < r.real();
    return l.imag() < r.imag();
  });
}

void enforce_conjugate_symmetry(std::vector<Complex>& values, double tol) {
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    if (std::abs(values[i].imag()) <= tol) {
      values[i] = {values[i].real(), 0.0};
      used[i] = true;
      continue;
    }
    std::size_t best = values.size();
    double best_dist = tol;
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(values[i] - std::conj(values[j]));
      if (d <= best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[i] = true;
    if (best == values.size()) continue;
    used[best] = true;
    const Complex mean = 0.5 * (values[i] + std::conj(values[best]));
    values[i] = mean;
    values[best] = std::conj(mean);
  }
}

SpectrumResult eigenvalues(const RealMatrix& a) {
  require_square(a, "eigenvalues");
  require_finite(a, "eigenvalues");
  Eigen::EigenSolver<RealMatrix> solver(a, /*computeEigenvectors=*/false);
  std::vector<Complex> values(solver.eigenvalues().data(),
                              solver.eigenvalues().data() + solver.eigenvalues().size());
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigenvalues: QR iteration did not converge; partial results:";
    for (const auto& v : values) os << " " << format_complex(v);
    throw Error(ErrorKind::kConvergence, os.str());
  }
  enforce_conjugate_symmetry(values);
  sort_spectrum(values);
  return {std::move(values), SpectrumBackend::kQrSolver};
}

std::vector<EigenPair> eigenvectors_for(const RealMatrix& a,
                                        std::span<const Complex> targets,
                                        double tol) {
  require_square(a, "eigenvectors_for");
  const std::vector<Complex> spectrum = eigenvalues(a).values;
  const Eigen::Index n = a.rows();

  // Snap each target to the nearest computed eigenvalue.
  std::vector<Complex> snapped;
  snapped.reserve(targets.size());
  for (Complex t : targets) {
    auto it = std::min_element(spectrum.begin(), spectrum.end(), [t](Complex l, Complex r) {
      return std::abs(l - t) < std::abs(r - t);
    });
    if (std::abs(*it - t) > tol) {
      throw Error(ErrorKind::kNotEigenvalue,
                  "eigenvectors_for: " + format_complex(t) +
                      " is not an eigenvalue (nearest " + format_complex(*it) + ")");
    }
    snapped.push_back(*it);
  }

  std::vector<EigenPair> pairs(targets.size());
  std::vector<bool> done(targets.size(), false);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (done[i]) continue;
    std::vector<std::size_t> group;
    for (std::size_t j = i; j < targets.size(); ++j) {
      if (!done[j] && std::abs(snapped[j] - snapped[i]) <= tol) group.push_back(j);
    }
    const Complex lambda = snapped[i];
    const auto m = static_cast<Eigen::Index>(group.size());
    if (m > n) {
      throw Error(ErrorKind::kRank, "eigenvectors_for: more targets than dimension");
    }

    // Null-space basis from the trailing right singular vectors. Real targets
    // go through a real SVD so that the vectors come out real.
    ComplexMatrix basis(n, m);
    if (lambda.imag() == 0.0) {
      const RealMatrix shifted = a - lambda.real() * RealMatrix::Identity(n, n);
      Eigen::JacobiSVD<RealMatrix> svd(shifted, Eigen::ComputeFullV);
      basis = svd.matrixV().rightCols(m).cast<Complex>();
    } else {
      const ComplexMatrix shifted =
          a.cast<Complex>() - lambda * ComplexMatrix::Identity(n, n);
      Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
      basis = svd.matrixV().rightCols(m);
    }

    for (Eigen::Index k = 0; k < m; ++k) {
      Eigen::VectorXcd v = basis.col(k);
      normalize_phase(v);
      const double residual = (a.cast<Complex>() * v - lambda * v).norm() / v.norm();
      if (residual > tol) {
        if (m > 1) {
          throw Error(ErrorKind::kRank,
                      "eigenvectors_for: eigenvalue " + format_complex(lambda) +
                          " requested " + std::to_string(m) +
                          " times but its eigenspace is thinner");
        }
        throw Error(ErrorKind::kEigenpair,
                    "eigenvectors_for: residual " + std::to_string(residual) +
                        " above tolerance for " + format_complex(lambda));
      }
      const std::size_t slot = group[static_cast<std::size_t>(k)];
      pairs[slot] = {lambda, std::move(v), residual};
      done[slot] = true;
    }
  }
  return pairs;
}

double pairing_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  multiset_difference(a, b, &worst);
  return worst;
}

std::vector<Complex> multiset_difference(std::span<const Complex> from,
                                         std::span<const Complex> remove,
                                         double* max_distance) {
  // Greedy: repeatedly commit the globally closest remaining pair.
  std::vector<bool> from_used(from.size(), false);
  std::vector<bool> remove_used(remove.size(), false);
  double worst = 0.0;
  const std::size_t rounds = std::min(from.size(), remove.size());
  for (std::size_t round = 0; round < rounds; ++round) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (from_used[i]) continue;
      for (std::size_t j = 0; j < remove.size(); ++j) {
        if (remove_used[j]) continue;
        const double d = std::abs(from[i] - remove[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    from_used[bi] = true;
    remove_used[bj] = true;
    worst = std::max(worst, best);
  }
  if (remove.size() > from.size()) worst = std::numeric_limits<double>::infinity();
  if (max_distance != nullptr) *max_distance = worst;

  std::vector<Complex> rest;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (!from_used[i]) rest.push_back(from[i]);
  }
  return rest;
}

}  // namespace hamspec
