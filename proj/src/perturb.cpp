#include "hamspec/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "hamspec/eig.hpp"

namespace hamspec {
namespace {

void require_full_rank(const RealMatrix& x) {
  if (x.cols() == 0) {
    throw Error(ErrorKind::kRank, "perturbation basis has no columns");
  }
  Eigen::JacobiSVD<RealMatrix> svd(x);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-10 * sv(0)) {
    throw Error(ErrorKind::kRank, "perturbation basis X is rank deficient");
  }
}

double invariance_residual(const RealMatrix& a, const PerturbationSpec& spec) {
  return (a * spec.basis - spec.basis * spec.omega).norm();
}

}  // namespace

double default_eigen_tol(const RealMatrix& a) { return 1e-8 * std::max(1.0, a.norm()); }

PerturbationSpec select_targets(const HamMatrix& a, std::span<const Complex> targets,
                                double tol) {
  if (tol < 0.0) tol = default_eigen_tol(a.body());
  if (targets.empty() || targets.size() % 2 != 0) {
    throw Error(ErrorKind::kParity,
                "select_targets: the number of targets must be even and positive (the "
                "core C is an even-dimensional Hamiltonian matrix), got " +
                    std::to_string(targets.size()));
  }

  // Column groups in target order: a real target takes one column, a
  // conjugate pair two.
  struct Group {
    Complex value;  // for pairs, the member with positive imaginary part
    bool pair = false;
  };
  std::vector<Group> groups;
  std::vector<bool> used(targets.size(), false);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Complex t = targets[i];
    if (std::abs(t.imag()) <= tol) {
      groups.push_back({{t.real(), 0.0}, false});
      continue;
    }
    std::size_t partner = targets.size();
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (!used[j] && std::abs(targets[j] - std::conj(t)) <= tol) {
        partner = j;
        break;
      }
    }
    if (partner == targets.size()) {
      throw Error(ErrorKind::kClosure,
                  "select_targets: complex target without its conjugate among the targets");
    }
    used[partner] = true;
    groups.push_back({t.imag() > 0 ? t : std::conj(t), true});
  }

  std::vector<Complex> requested;
  for (const auto& g : groups) requested.push_back(g.value);
  const std::vector<EigenPair> pairs = eigenvectors_for(a.body(), requested, tol);

  const Eigen::Index n = a.dim();
  const auto r = static_cast<Eigen::Index>(targets.size());
  PerturbationSpec spec;
  spec.basis = RealMatrix::Zero(n, r);
  spec.omega = RealMatrix::Zero(r, r);
  Eigen::Index col = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const EigenPair& p = pairs[g];
    if (!groups[g].pair) {
      spec.basis.col(col) = p.vector.real();
      spec.omega(col, col) = p.value.real();
      spec.targets.emplace_back(p.value.real(), 0.0);
      ++col;
      continue;
    }
    const double re = p.value.real();
    const double im = p.value.imag();
    spec.basis.col(col) = p.vector.real();
    spec.basis.col(col + 1) = p.vector.imag();
    spec.omega(col, col) = re;
    spec.omega(col, col + 1) = im;
    spec.omega(col + 1, col) = -im;
    spec.omega(col + 1, col + 1) = re;
    spec.targets.push_back(p.value);
    spec.targets.push_back(std::conj(p.value));
    col += 2;
  }
  require_full_rank(spec.basis);
  return spec;
}

PerturbationSpec spec_from_basis(const HamMatrix& a, const RealMatrix& basis,
                                 const RealMatrix& core, double tol) {
  if (tol < 0.0) tol = default_eigen_tol(a.body());
  if (basis.rows() != a.dim()) {
    throw Error(ErrorKind::kDimension, "spec_from_basis: X must have " +
                                           std::to_string(a.dim()) + " rows");
  }
  require_finite(basis, "spec_from_basis");
  require_full_rank(basis);
  PerturbationSpec spec;
  spec.basis = basis;
  spec.omega = basis.colPivHouseholderQr().solve(a.body() * basis);
  const double residual = invariance_residual(a.body(), spec);
  if (residual > tol * std::max(1.0, basis.norm())) {
    throw Error(ErrorKind::kEigenpair,
                "spec_from_basis: columns of X do not span an invariant subspace of A "
                "(||A X - X Omega||_F = " + std::to_string(residual) + ")");
  }
  spec.targets = eigenvalues(spec.omega).values;
  return with_core(std::move(spec), core);
}

PerturbationSpec with_core(PerturbationSpec spec, const RealMatrix& core) {
  const Eigen::Index r = spec.basis.cols();
  if (core.rows() != r || core.cols() != r) {
    throw Error(ErrorKind::kDimension, "core C must be " + std::to_string(r) + "x" +
                                           std::to_string(r));
  }
  HamMatrix::certify(core);  // throws kStructure / kDimension
  spec.core = core;
  return spec;
}

CorePrediction predict_core(const PerturbationSpec& spec) {
  require_full_rank(spec.basis);
  if (spec.core.size() == 0) {
    throw Error(ErrorKind::kPrecondition, "predict_core: no core matrix C attached");
  }
  CorePrediction out;
  out.core_matrix = spec.omega + spec.core * h_transpose(spec.basis) * spec.basis;
  out.eigenvalues = eigenvalues(out.core_matrix).values;

  if (out.core_matrix.rows() <= 4) {
    const auto oracle = roots_oracle(charpoly_coefficients(out.core_matrix)).values;
    const double gap = pairing_distance(out.eigenvalues, oracle);
    if (gap > 1e-6 * std::max(1.0, out.core_matrix.norm())) {
      throw Error(ErrorKind::kInconsistency,
                  "predict_core: solver and charpoly oracle disagree on sigma(B) by " +
                      std::to_string(gap));
    }
  }
  return out;
}

PerturbationReport apply_rado(const HamMatrix& a, const PerturbationSpec& spec) {
  if (spec.basis.rows() != a.dim()) {
    throw Error(ErrorKind::kDimension, "apply_rado: X does not match the size of A");
  }
  with_core(spec, spec.core);  // validates C
  const double tol = default_eigen_tol(a.body());
  const double residual = invariance_residual(a.body(), spec);
  if (residual > tol * std::max(1.0, spec.basis.norm())) {
    throw Error(ErrorKind::kEigenpair,
                "apply_rado: columns of X are not eigenvectors of A (||A X - X Omega||_F = " +
                    std::to_string(residual) + ")");
  }

  const CorePrediction core = predict_core(spec);
  const RealMatrix update = spec.basis * spec.core * h_transpose(spec.basis);
  RealMatrix updated = a.body() + update;
  const double ham_tol = 1e-9 * std::max(1.0, updated.norm());

  PerturbationReport report{HamMatrix::certify(std::move(updated), ham_tol),
                            core.eigenvalues,
                            {},
                            core.core_matrix,
                            {},
                            0.0,
                            update.norm()};
  const auto spectrum = eigenvalues(a.body()).values;
  report.retained = multiset_difference(spectrum, spec.targets);
  sort_spectrum(report.retained);
  report.achieved = eigenvalues(report.updated.body()).values;

  std::vector<Complex> predicted = report.replaced;
  predicted.insert(predicted.end(), report.retained.begin(), report.retained.end());
  report.prediction_error = pairing_distance(predicted, report.achieved);
  return report;
}

}  // namespace hamspec
