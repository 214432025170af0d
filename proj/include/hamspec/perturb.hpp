#pragma once

#include <span>
#include <vector>

#include "hamspec/matcore.hpp"

namespace hamspec {

/// Data for the structured rank-r update A + X C X^H.
///
/// `basis` is X (2n x r, real, full column rank) and spans an invariant
/// subspace of A with A X = X `omega`. For real targets omega is diagonal;
/// a conjugate pair a +- ib contributes the real block [[a, b], [-b, a]] with
/// the real and imaginary parts of the eigenvector as columns, which keeps
/// the update real. `core` is the r x r Hamiltonian C; empty until attached.
struct PerturbationSpec {
  RealMatrix basis;
  RealMatrix omega;
  RealMatrix core;
  std::vector<Complex> targets;  // sigma(omega), in column order
};

struct CorePrediction {
  RealMatrix core_matrix;            // B = Omega + C X^H X
  std::vector<Complex> eigenvalues;  // mu_1..mu_r, sorted
};

struct PerturbationReport {
  HamMatrix updated;
  std::vector<Complex> replaced;   // sigma(B)
  std::vector<Complex> retained;   // sigma(A) minus targets
  RealMatrix core_matrix;          // B
  std::vector<Complex> achieved;   // sigma(updated)
  double prediction_error = 0.0;   // pairing distance, predicted vs achieved
  double update_norm = 0.0;        // ||X C X^H||_F
};

/// 1e-8 * max(1, ||A||_F).
double default_eigen_tol(const RealMatrix& a);

/// X and Omega for the given targets (C left empty). Targets must lie in
/// sigma(A), come in even number, and contain every complex target together
/// with its conjugate. Repeated targets take independent eigenvectors in
/// deterministic order; the resulting X is one valid choice among many.
PerturbationSpec select_targets(const HamMatrix& a, std::span<const Complex> targets,
                                double tol = -1.0);

/// Builds a spec from an explicit basis X: Omega is the least-squares
/// solution of X Omega = A X and the invariance residual must be within tol.
PerturbationSpec spec_from_basis(const HamMatrix& a, const RealMatrix& basis,
                                 const RealMatrix& core, double tol = -1.0);

/// Returns `spec` with C attached after checking it is r x r Hamiltonian.
PerturbationSpec with_core(PerturbationSpec spec, const RealMatrix& core);

/// B = Omega + C X^H X and its spectrum. For r <= 4 the spectrum is
/// cross-checked against the characteristic-polynomial oracle.
CorePrediction predict_core(const PerturbationSpec& spec);

/// A + X C X^H together with the predicted and achieved spectra.
PerturbationReport apply_rado(const HamMatrix& a, const PerturbationSpec& spec);

}  // namespace hamspec
