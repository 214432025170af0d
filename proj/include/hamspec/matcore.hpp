#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hamspec/error.hpp"

namespace hamspec {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// 2n x 2n symplectic form [[0, I_n], [-I_n, 0]].
RealMatrix build_J(int half_dim);

/// Hamiltonian transpose J_n A^T J_m of a 2m x 2n matrix. Both dimensions
/// must be even; the result is 2n x 2m.
RealMatrix h_transpose(const RealMatrix& a);

struct HamiltonianCheck {
  bool hamiltonian = false;
  double residual = 0.0;  // ||A^T J + J A||_F
};

HamiltonianCheck is_hamiltonian(const RealMatrix& a, double tol);

/// 1e-10 * max(1, ||A||_F).
double default_hamiltonian_tol(const RealMatrix& a);

double frobenius_norm(const RealMatrix& a);

/// Permutation P with P * diag(H_1, ..., H_k) * P^T in [[A, E], [F, -A^T]]
/// form, where block k has half-dimension block_half_dims[k].
RealMatrix shuffle_permutation(std::span<const int> block_half_dims);

/// A real matrix certified Hamiltonian at construction.
class HamMatrix {
 public:
  /// Throws kStructure when the residual exceeds tol (default tolerance when
  /// tol < 0) and kDimension for non-square or odd input.
  static HamMatrix certify(RealMatrix body, double tol = -1.0);

  const RealMatrix& body() const noexcept { return body_; }
  double residual() const noexcept { return residual_; }
  int half_dim() const noexcept { return static_cast<int>(body_.rows() / 2); }
  int dim() const noexcept { return static_cast<int>(body_.rows()); }

 private:
  HamMatrix(RealMatrix body, double residual)
      : body_(std::move(body)), residual_(residual) {}

  RealMatrix body_;
  double residual_ = 0.0;
};

/// Throws kDimension unless every entry is finite.
void require_finite(const RealMatrix& a, const char* what);

}  // namespace hamspec
