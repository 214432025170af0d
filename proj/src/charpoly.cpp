// Characteristic-polynomial oracle. Kept free of any eigensolver so that it
// can cross-check eigenvalues() independently. Arithmetic runs in long double.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "hamspec/eig.hpp"

namespace hamspec {
namespace {

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LongComplex = std::complex<long double>;

constexpr long double kLongEps = std::numeric_limits<long double>::epsilon();

// p(z) and sum |c_k| |z|^(n-k), the rounding scale of the Horner sum.
std::pair<LongComplex, long double> evaluate(std::span<const double> coeffs, LongComplex z) {
  LongComplex value = 0;
  long double scale = 0;
  const long double mag = std::abs(z);
  for (double c : coeffs) {
    value = value * z + static_cast<long double>(c);
    scale = scale * mag + std::abs(static_cast<long double>(c));
  }
  return {value, scale};
}

}  // namespace

std::vector<double> charpoly_coefficients(const RealMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::kDimension, "charpoly_coefficients: matrix must be square");
  }
  if (a.rows() > kOracleMaxDim) {
    throw Error(ErrorKind::kSize, "charpoly_coefficients: dimension " +
                                      std::to_string(a.rows()) + " exceeds oracle cap " +
                                      std::to_string(kOracleMaxDim));
  }
  const Eigen::Index n = a.rows();
  const LongMatrix al = a.cast<long double>();
  const LongMatrix id = LongMatrix::Identity(n, n);

  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k.
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
  coeffs[0] = 1.0;
  LongMatrix m = LongMatrix::Zero(n, n);
  long double previous = 1.0L;
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = al * m + previous * id;
    const long double c = -(al * m).trace() / static_cast<long double>(k);
    coeffs[static_cast<std::size_t>(k)] = static_cast<double>(c);
    previous = c;
  }
  return coeffs;
}

SpectrumResult roots_oracle(std::span<const double> coeffs) {
  if (coeffs.empty() || coeffs.front() != 1.0) {
    throw Error(ErrorKind::kDomain, "roots_oracle: polynomial must be monic");
  }
  const std::size_t degree = coeffs.size() - 1;
  if (degree > static_cast<std::size_t>(kOracleMaxDim)) {
    throw Error(ErrorKind::kSize, "roots_oracle: degree " + std::to_string(degree) +
                                      " exceeds oracle cap");
  }
  SpectrumResult result{{}, SpectrumBackend::kCharpolyOracle};
  if (degree == 0) return result;

  // Fujiwara bound for the root radius.
  long double radius = 0;
  for (std::size_t k = 1; k <= degree; ++k) {
    const long double c = std::abs(static_cast<long double>(coeffs[k]));
    const long double root = std::pow(k == degree ? c / 2 : c, 1.0L / k);
    radius = std::max(radius, 2 * root);
  }
  if (radius == 0) radius = 1;

  std::vector<LongComplex> z(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    const long double angle = 2 * std::numbers::pi_v<long double> * k / degree + 0.4L;
    z[k] = std::polar(radius, angle);
  }

  constexpr int kMaxIterations = 5000;
  bool converged = false;
  for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
    long double max_step = 0;
    bool at_rounding = true;
    for (std::size_t i = 0; i < degree; ++i) {
      const auto [value, scale] = evaluate(coeffs, z[i]);
      if (std::abs(value) > 32 * kLongEps * scale) at_rounding = false;
      LongComplex denom = 1;
      for (std::size_t j = 0; j < degree; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      if (denom == LongComplex(0)) denom = kLongEps;
      const LongComplex step = value / denom;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step) / (1 + std::abs(z[i])));
    }
    converged = at_rounding || max_step <= 4 * kLongEps;
  }

  for (const auto& root : z) {
    const auto [value, scale] = evaluate(coeffs, root);
    if (std::abs(value) > 1e-8L * std::max(1.0L, scale)) {
      throw Error(ErrorKind::kConvergence,
                  "roots_oracle: Durand-Kerner did not converge (|p(r)| = " +
                      std::to_string(static_cast<double>(std::abs(value))) + ")");
    }
    result.values.emplace_back(static_cast<double>(root.real()),
                               static_cast<double>(root.imag()));
  }
  enforce_conjugate_symmetry(result.values);
  sort_spectrum(result.values);
  return result;
}

}  // namespace hamspec
