#pragma once

#include <span>
#include <vector>

#include "hamspec/matcore.hpp"

namespace hamspec {

/// Multiset of complex eigenvalues; multiplicity is repetition.
struct Spectrum {
  std::vector<Complex> entries;

  std::size_t size() const noexcept { return entries.size(); }
};

struct Quadruple {
  double re = 0.0;  // a > 0
  double im = 0.0;  // b > 0
};

/// Partition of an H-realizable spectrum.
///   real_pairs:  lambda >= 0, each standing for {lambda, -lambda}
///   imag_pairs:  b > 0, each standing for {ib, -ib}
///   quadruples:  (a, b), each standing for {a +- ib, -a +- ib}
struct RealizationPlan {
  std::vector<double> real_pairs;
  std::vector<double> imag_pairs;
  std::vector<Quadruple> quadruples;

  /// The multiset the plan denotes.
  std::vector<Complex> denoted() const;
};

/// 1e-9 * max(1, max |z|).
double default_closure_tol(const Spectrum& s);

/// Succeeds iff the multiset has even size and is closed under negation and
/// conjugation with matching multiplicities. Values within tol of an axis are
/// snapped onto it. kParity for odd size, kClosure naming the first missing
/// partner (input order) otherwise.
RealizationPlan validate_h_realizable(const Spectrum& s, double tol = -1.0);

/// [[0, b], [-b, 0]], spectrum {ib, -ib}.
HamMatrix realize_imag_pair(double b);

/// [[a,b,0,0],[-b,a,0,0],[0,0,-a,b],[0,0,-b,-a]], spectrum {a +- ib, -a +- ib}.
HamMatrix realize_quadruple(double a, double b);

/// Hamiltonian matrix with spectrum L u -L for the real list L. A real matrix
/// with spectrum L is split into its antisymmetric and symmetric parts S, T
/// and assembled as [[S, T], [T, S]].
HamMatrix realize_real_list(std::span<const double> lambdas);

/// Nonsymmetric real matrix with spectrum `lambdas`: one companion matrix per
/// layer of distinct values, stacked block-diagonally, so repeated values stay
/// semisimple.
RealMatrix real_matrix_with_spectrum(std::span<const double> lambdas);

/// P diag(H_1, ..., H_k) P^T in [[A, E], [F, -A^T]] form.
HamMatrix direct_sum(std::span<const HamMatrix> blocks);

/// validate -> per-part blocks -> direct_sum.
HamMatrix realize_spectrum(const Spectrum& s);

}  // namespace hamspec
