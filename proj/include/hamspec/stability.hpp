#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hamspec/matcore.hpp"
#include "hamspec/perturb.hpp"

namespace hamspec {

/// H(alpha) = [[A, -alpha I], [alpha I, -A^T]] for an n x n system matrix A.
struct HAlphaSystem {
  RealMatrix a;
  double alpha = 0.0;
  HamMatrix h;
};

HAlphaSystem build_h_alpha(const RealMatrix& a, double alpha);

/// ||A^T A - A A^T||_F <= 1e-8 ||A||_F^2.
bool is_normal(const RealMatrix& a);

/// +-sqrt(lambda_k^2 - alpha^2) (principal root) for each eigenvalue of a
/// normal A, in the order +, - per eigenvalue.
std::vector<Complex> spectrum_normal_closed_form(std::span<const Complex> eigs, double alpha);

struct BetaEigenvector {
  Complex value;          // +-sqrt(lambda_k^2 - d_k^2)
  Complex beta;           // (lambda_k +- sqrt(lambda_k^2 - d_k^2)) / d_k
  Eigen::VectorXcd vector;  // [beta e_k; e_k]
  double residual = 0.0;
};

/// Eigenvectors [beta_k e_k; e_k] of the diagonalized block system
/// [[diag(lambda), -D], [D, -diag(lambda)]] with D = diag(d). Every d_k must
/// be nonzero; each residual is checked against 1e-9.
std::vector<BetaEigenvector> beta_eigvectors(std::span<const Complex> eigs,
                                             std::span<const double> d);
std::vector<BetaEigenvector> beta_eigvectors(std::span<const Complex> eigs, double alpha);

struct AxisTest {
  bool on_axis = false;
  Complex witness;          // eigenvalue with the smallest |Re|
  double min_abs_re = 0.0;
};

AxisTest has_imaginary_axis_eigenvalue(const RealMatrix& h, double tol);

/// 1e-8 * (1 + ||H||_F).
double default_axis_tol(const RealMatrix& h);

struct BisectionCertificate {
  double alpha = 0.0;
  double min_abs_re = 0.0;
  bool on_axis = false;
};

struct BisectionResult {
  double lower = 0.0;  // largest tested alpha without an imaginary-axis eigenvalue
  double upper = 0.0;  // smallest tested alpha with one
  int iterations = 0;
  double alpha_max = 0.0;
  std::vector<BisectionCertificate> certificates;
  bool degenerate = false;  // A not stable; bracket is [0, 0]
  std::string diagnostic;
};

/// Bisection on alpha for the stability radius using the imaginary-axis test
/// on H(alpha). Without alpha_max the start is ||A||_F + 1, doubled until the
/// test fires (at most 2^10 doublings). kBracket when the upper end never
/// tests true.
BisectionResult stability_radius_bisection(const RealMatrix& a, double tol,
                                           std::optional<double> alpha_max = std::nullopt);

struct ForcedPerturbation {
  HamMatrix k;  // H(alpha) + X C X^H
  RealMatrix core;
  RealMatrix basis;
  double lambda1 = 0.0;
  double beta_plus = 0.0;
  double beta_minus = 0.0;
  std::vector<Complex> injected;  // sigma(Omega + C X^H X)
  std::vector<Complex> spectrum;  // sigma(K)
  bool reaches_axis = false;
  Complex witness;
  double min_abs_re = 0.0;
  double bound = 0.0;            // alpha + 2 ||C||_F
  double raw_update_norm = 0.0;  // ||X C X^H||_F with the eigenvector X

  // Same construction with X replaced by an orthonormal basis of its span.
  double orthonormal_update_norm = 0.0;
  std::vector<Complex> orthonormal_injected;
  bool orthonormal_reaches_axis = false;
};

/// Rank-2 Hamiltonian update of H(alpha) with C = [[a, b], [c, -a]] acting on
/// the eigenvectors [beta+- u; u] of lambda1 (u a common real eigenvector of
/// A and A^T). Needs a^2 + bc < 0, alpha > 0, a real sigma(H(alpha)) and
/// |lambda1| > alpha. lambda1 defaults to the smallest |lambda| > alpha.
ForcedPerturbation force_imaginary_axis(const HAlphaSystem& sys, double a, double b,
                                        double c,
                                        std::optional<double> lambda1 = std::nullopt);

struct StructuredEigenvector {
  Eigen::VectorXcd z;
  double residual = 0.0;  // ||H z - lambda z|| / ||z||
};

/// Eigenvector z = [alpha x; (A - lambda I) x] of H(alpha) with x in the null
/// space of alpha^2 I - (A^T + lambda I)(A - lambda I). alpha = 0 falls back
/// to a direct eigenvector of diag(A, -A^T).
StructuredEigenvector eigvec_structure(const RealMatrix& a, double alpha, Complex lambda);

}  // namespace hamspec
