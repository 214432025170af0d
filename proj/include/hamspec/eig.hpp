#pragma once

#include <span>
#include <vector>

#include "hamspec/matcore.hpp"

namespace hamspec {

enum class SpectrumBackend { kQrSolver, kCharpolyOracle };

struct SpectrumResult {
  std::vector<Complex> values;  // sorted by (re, im)
  SpectrumBackend backend = SpectrumBackend::kQrSolver;
};

struct EigenPair {
  Complex value;
  Eigen::VectorXcd vector;  // unit 2-norm, first nonzero component real positive
  double residual = 0.0;    // ||A v - lambda v||_2 / ||v||_2
};

/// Eigenvalues through the real Schur form. Complex values come in exact
/// conjugate pairs for real input. Throws kConvergence if the QR iteration
/// stalls.
SpectrumResult eigenvalues(const RealMatrix& a);

/// Eigenvectors for the requested eigenvalues. Repeated targets receive
/// independent vectors from the null space of A - lambda I; a null space
/// thinner than the repeat count is a kRank error.
std::vector<EigenPair> eigenvectors_for(const RealMatrix& a,
                                        std::span<const Complex> targets,
                                        double tol);

/// Monic characteristic polynomial, highest degree first
/// ([1, c_{n-1}, ..., c_0]), via Faddeev-LeVerrier. Dimension <= 16.
std::vector<double> charpoly_coefficients(const RealMatrix& a);

/// All roots of a monic polynomial (highest degree first) by Durand-Kerner
/// simultaneous iteration. Degree <= 16.
SpectrumResult roots_oracle(std::span<const double> coeffs);

inline constexpr int kOracleMaxDim = 16;

// ---- spectrum utilities ----

void sort_spectrum(std::vector<Complex>& values);

/// Pairs (l, m) with |l - conj(m)| <= tol are replaced by their average and
/// its conjugate; values within tol of the real axis are made real.
void enforce_conjugate_symmetry(std::vector<Complex>& values, double tol = 1e-8);

/// Largest distance in a greedy minimal-distance matching of two multisets.
/// Infinity when the sizes differ.
double pairing_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Removes one nearest match in `from` for every entry of `remove`; returns
/// what is left and the largest matched distance through `max_distance`.
std::vector<Complex> multiset_difference(std::span<const Complex> from,
                                         std::span<const Complex> remove,
                                         double* max_distance = nullptr);

}  // namespace hamspec
