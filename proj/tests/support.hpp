// Shared fixtures and random generators for the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hamspec/matcore.hpp"
#include "hamspec/realize.hpp"

namespace hamspec::testing {

using Rng = std::mt19937_64;

inline RealMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                                double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline RealMatrix random_symmetric(Rng& rng, Eigen::Index n) {
  const RealMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.transpose());
}

/// [[C, G], [F, -C^T]] with G, F symmetric.
inline RealMatrix random_hamiltonian(Rng& rng, Eigen::Index half) {
  const RealMatrix c = random_matrix(rng, half, half);
  const RealMatrix g = random_symmetric(rng, half);
  const RealMatrix f = random_symmetric(rng, half);
  RealMatrix h(2 * half, 2 * half);
  h << c, g, f, -c.transpose();
  return h;
}

/// Symmetric circulant with first row (c_0, c_1, ..., c_{n-1}), c_k = c_{n-k}.
inline RealMatrix random_symmetric_circulant(Rng& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    row[static_cast<std::size_t>(k)] = u(rng);
    row[static_cast<std::size_t>((n - k) % n)] = row[static_cast<std::size_t>(k)];
  }
  RealMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = row[static_cast<std::size_t>((j - i + n) % n)];
  return m;
}

inline RealMatrix circulant(const std::vector<double>& row) {
  const auto n = static_cast<Eigen::Index>(row.size());
  RealMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = row[static_cast<std::size_t>((j - i + n) % n)];
  return m;
}

/// Random H-realizable multiset of size <= max_size built from real pairs,
/// imaginary pairs and quadruples on a quarter grid (repeats allowed).
inline std::vector<Complex> random_realizable_spectrum(Rng& rng, int max_size = 12) {
  std::uniform_int_distribution<int> grid(1, 12);  // values k / 4
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> size_dist(1, max_size / 2);
  const int target_pairs = size_dist(rng);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < 2 * target_pairs) {
    const int k = kind(rng);
    const double x = grid(rng) / 4.0;
    const double y = grid(rng) / 4.0;
    if (k == 0) {
      out.insert(out.end(), {{x, 0}, {-x, 0}});
    } else if (k == 1) {
      out.insert(out.end(), {{0, y}, {0, -y}});
    } else if (static_cast<int>(out.size()) + 4 <= 2 * target_pairs) {
      out.insert(out.end(), {{x, y}, {x, -y}, {-x, -y}, {-x, y}});
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

// ---- fixed reference problems ----

/// 4x4 Hamiltonian with eigenvalues {+-2 sqrt 2, +-1}.
inline RealMatrix rado_example_matrix() {
  RealMatrix a(4, 4);
  a << 1, 2, 0, 1,
       0, 2, 1, 0,
       1, 2, -1, 0,
       2, 0, -2, -2;
  return a;
}

/// Eigenvector basis for -2 sqrt 2 (column 0) and 2 sqrt 2 (column 1).
inline RealMatrix rado_example_basis() {
  const double s = std::sqrt(2.0);
  RealMatrix x(4, 2);
  x << 4 - 3 * s, 3 * s + 4,
       3.5 - 2.5 * s, 2.5 * s + 3.5,
       3 - 2 * s, 2 * s + 3,
       1, 1;
  return x;
}

inline RealMatrix rado_example_core() {
  RealMatrix c(2, 2);
  c << 1, 2, 2, -1;
  return c;
}

/// 6x6 Hamiltonian with a rank-2 destabilizing update.
inline RealMatrix stability_example_matrix() {
  const double t = 1.0 / 3.0;
  RealMatrix a(6, 6);
  a << -1, 0, 0, -t, 0, 0,
       0, -1, 0, 0, -t, 0,
       0, 0, 2, 0, 0, -t,
       t, 0, 0, 1, 0, 0,
       0, t, 0, 0, 1, 0,
       0, 0, t, 0, 0, -2;
  return a;
}

inline RealMatrix stability_example_basis() {
  const double s = std::sqrt(2.0);
  RealMatrix x = RealMatrix::Zero(6, 2);
  x(0, 0) = -2 * s - 3;
  x(0, 1) = 2 * s - 3;
  x(3, 0) = 1;
  x(3, 1) = 1;
  return x;
}

inline RealMatrix stability_example_core() {
  RealMatrix c(2, 2);
  c << 2, 2, -2, -2;
  return c;
}

inline std::vector<Complex> quadruple_pair_spectrum() {
  return {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}, {1, 2}, {1, -2}, {-1, -2}, {-1, 2}};
}

/// The 16-value list: reals {+-1/2, +-2, +-1, +-1} with L(1,1) u L(1,2).
inline std::vector<Complex> sixteen_value_spectrum() {
  return {{-0.5, 0}, {2, 0},  {0.5, 0},  {-2, 0},  {-1, 1}, {-1, -1}, {1, 1}, {1, -1},
          {-1, 2},   {-1, -2}, {1, 2},   {1, -2},  {1, 0},  {-1, 0},  {1, 0}, {-1, 0}};
}

}  // namespace hamspec::testing
