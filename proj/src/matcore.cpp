#include "hamspec/matcore.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hamspec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kParity: return "parity";
    case ErrorKind::kClosure: return "closure";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kRank: return "rank";
    case ErrorKind::kNotEigenvalue: return "not_an_eigenvalue";
    case ErrorKind::kEigenpair: return "eigenpair";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kSize: return "size";
    case ErrorKind::kBracket: return "bracket";
    case ErrorKind::kHypothesis: return "hypothesis";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kInconsistency: return "inconsistency";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

RealMatrix build_J(int half_dim) {
  if (half_dim < 1) {
    throw Error(ErrorKind::kDimension, "build_J: half dimension must be >= 1");
  }
  const Eigen::Index n = half_dim;
  RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
  return j;
}

RealMatrix h_transpose(const RealMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0 || a.rows() % 2 != 0 || a.cols() % 2 != 0) {
    throw Error(ErrorKind::kDimension,
                "h_transpose: both dimensions must be even and positive, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  const int m = static_cast<int>(a.rows() / 2);
  const int n = static_cast<int>(a.cols() / 2);
  return build_J(n) * a.transpose() * build_J(m);
}

HamiltonianCheck is_hamiltonian(const RealMatrix& a, double tol) {
  if (a.rows() != a.cols() || a.rows() == 0 || a.rows() % 2 != 0) {
    throw Error(ErrorKind::kDimension,
                "is_hamiltonian: expected a square matrix of even dimension, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  const RealMatrix j = build_J(static_cast<int>(a.rows() / 2));
  const double residual = (a.transpose() * j + j * a).norm();
  return {residual <= tol, residual};
}

double default_hamiltonian_tol(const RealMatrix& a) {
  return 1e-10 * std::max(1.0, a.norm());
}

double frobenius_norm(const RealMatrix& a) { return a.norm(); }

RealMatrix shuffle_permutation(std::span<const int> block_half_dims) {
  if (block_half_dims.empty()) {
    throw Error(ErrorKind::kDimension, "shuffle_permutation: empty block list");
  }
  if (std::any_of(block_half_dims.begin(), block_half_dims.end(),
                  [](int d) { return d < 1; })) {
    throw Error(ErrorKind::kDimension,
                "shuffle_permutation: block half-dimensions must be positive");
  }
  const int total = std::accumulate(block_half_dims.begin(), block_half_dims.end(), 0);
  RealMatrix p = RealMatrix::Zero(2 * total, 2 * total);
  // Block k occupies stacked rows [2*offset, 2*offset + 2*n_k). Its top half
  // goes to the leading half of the canonical form, its bottom half to the
  // trailing half, both at the same offset.
  int offset = 0;
  for (int n : block_half_dims) {
    for (int i = 0; i < n; ++i) {
      p(offset + i, 2 * offset + i) = 1.0;
      p(total + offset + i, 2 * offset + n + i) = 1.0;
    }
    offset += n;
  }
  return p;
}

HamMatrix HamMatrix::certify(RealMatrix body, double tol) {
  require_finite(body, "HamMatrix");
  if (tol < 0.0) tol = default_hamiltonian_tol(body);
  const HamiltonianCheck check = is_hamiltonian(body, tol);
  if (!check.hamiltonian) {
    throw Error(ErrorKind::kStructure,
                "matrix is not Hamiltonian: ||A^T J + J A||_F = " +
                    std::to_string(check.residual));
  }
  return HamMatrix(std::move(body), check.residual);
}

void require_finite(const RealMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorKind::kDomain, std::string(what) + ": non-finite entry");
  }
}

}  // namespace hamspec
