#include "hamspec/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "hamspec/eig.hpp"

namespace hamspec {
namespace {

void require_square(const RealMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorKind::kDimension, std::string(what) + ": A must be square");
  }
}

bool axis_test(const RealMatrix& a, double alpha, BisectionCertificate* cert) {
  const HAlphaSystem sys = build_h_alpha(a, alpha);
  const AxisTest t = has_imaginary_axis_eigenvalue(sys.h.body(), default_axis_tol(sys.h.body()));
  if (cert != nullptr) *cert = {alpha, t.min_abs_re, t.on_axis};
  return t.on_axis;
}

}  // namespace

HAlphaSystem build_h_alpha(const RealMatrix& a, double alpha) {
  require_square(a, "build_h_alpha");
  require_finite(a, "build_h_alpha");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::kDomain, "build_h_alpha: alpha must be finite and nonnegative");
  }
  const Eigen::Index n = a.rows();
  RealMatrix h(2 * n, 2 * n);
  h << a, -alpha * RealMatrix::Identity(n, n), alpha * RealMatrix::Identity(n, n),
      -a.transpose();
  return {a, alpha, HamMatrix::certify(std::move(h))};
}

bool is_normal(const RealMatrix& a) {
  const double scale = a.squaredNorm();
  return (a.transpose() * a - a * a.transpose()).norm() <= 1e-8 * scale;
}

std::vector<Complex> spectrum_normal_closed_form(std::span<const Complex> eigs, double alpha) {
  std::vector<Complex> out;
  out.reserve(2 * eigs.size());
  for (Complex l : eigs) {
    const Complex s = std::sqrt(l * l - alpha * alpha);
    out.push_back(s);
    out.push_back(-s);
  }
  return out;
}

std::vector<BetaEigenvector> beta_eigvectors(std::span<const Complex> eigs,
                                             std::span<const double> d) {
  if (eigs.size() != d.size()) {
    throw Error(ErrorKind::kDimension, "beta_eigvectors: eigenvalue and D sizes differ");
  }
  const auto n = static_cast<Eigen::Index>(eigs.size());
  ComplexMatrix block = ComplexMatrix::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double dk = d[static_cast<std::size_t>(k)];
    if (dk == 0.0 || !std::isfinite(dk)) {
      throw Error(ErrorKind::kDomain, "beta_eigvectors: every d_k must be nonzero");
    }
    block(k, k) = eigs[static_cast<std::size_t>(k)];
    block(k, n + k) = -dk;
    block(n + k, k) = dk;
    block(n + k, n + k) = -eigs[static_cast<std::size_t>(k)];
  }

  std::vector<BetaEigenvector> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex l = eigs[static_cast<std::size_t>(k)];
    const double dk = d[static_cast<std::size_t>(k)];
    const Complex s = std::sqrt(l * l - dk * dk);
    for (double sign : {1.0, -1.0}) {
      BetaEigenvector v;
      v.value = sign * s;
      v.beta = (l + sign * s) / dk;
      v.vector = Eigen::VectorXcd::Zero(2 * n);
      v.vector(k) = v.beta;
      v.vector(n + k) = 1.0;
      v.residual = (block * v.vector - v.value * v.vector).norm() / v.vector.norm();
      if (v.residual > 1e-9) {
        std::ostringstream os;
        os << "beta_eigvectors: residual " << v.residual << " for k = " << k;
        throw Error(ErrorKind::kInconsistency, os.str());
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<BetaEigenvector> beta_eigvectors(std::span<const Complex> eigs, double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorKind::kDomain, "beta_eigvectors: alpha must be positive");
  }
  const std::vector<double> d(eigs.size(), alpha);
  return beta_eigvectors(eigs, d);
}

double default_axis_tol(const RealMatrix& h) { return 1e-8 * (1.0 + h.norm()); }

AxisTest has_imaginary_axis_eigenvalue(const RealMatrix& h, double tol) {
  const auto values = eigenvalues(h).values;
  AxisTest t;
  t.min_abs_re = std::numeric_limits<double>::infinity();
  for (Complex v : values) {
    // Prefer the upper-half-plane member so the witness is deterministic.
    const double re = std::abs(v.real());
    if (re < t.min_abs_re || (re == t.min_abs_re && v.imag() > t.witness.imag())) {
      t.min_abs_re = re;
      t.witness = v;
    }
  }
  t.on_axis = t.min_abs_re <= tol;
  return t;
}

BisectionResult stability_radius_bisection(const RealMatrix& a, double tol,
                                           std::optional<double> alpha_max) {
  require_square(a, "stability_radius_bisection");
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::kDomain, "stability_radius_bisection: tol must be positive");
  }
  BisectionResult result;

  const double a_tol = default_axis_tol(a);
  for (Complex l : eigenvalues(a).values) {
    if (l.real() >= -a_tol) {
      std::ostringstream os;
      os.precision(17);
      os << "A is not stable: eigenvalue " << l.real() << (l.imag() < 0 ? "" : "+")
         << l.imag() << "i lies on or right of the imaginary axis";
      result.degenerate = true;
      result.diagnostic = os.str();
      return result;
    }
  }
  if (axis_test(a, 0.0, nullptr)) {
    result.degenerate = true;
    result.diagnostic = "H(0) already has an imaginary-axis eigenvalue";
    return result;
  }

  double hi = 0.0;
  if (alpha_max) {
    hi = *alpha_max;
    if (!(hi > 0.0) || !axis_test(a, hi, nullptr)) {
      throw Error(ErrorKind::kBracket,
                  "stability_radius_bisection: H(alpha_max) has no imaginary-axis "
                  "eigenvalue; alpha_max is too small");
    }
  } else {
    hi = a.norm() + 1.0;
    int doublings = 0;
    while (!axis_test(a, hi, nullptr)) {
      if (++doublings > 1024) {
        throw Error(ErrorKind::kBracket,
                    "stability_radius_bisection: no upper bracket after 2^10 doublings");
      }
      hi *= 2.0;
    }
  }
  result.alpha_max = hi;

  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    BisectionCertificate cert;
    if (axis_test(a, mid, &cert)) {
      hi = mid;
    } else {
      lo = mid;
    }
    result.certificates.push_back(cert);
    ++result.iterations;
  }
  result.lower = lo;
  result.upper = hi;
  return result;
}

ForcedPerturbation force_imaginary_axis(const HAlphaSystem& sys, double a, double b,
                                        double c, std::optional<double> lambda1) {
  if (a * a + b * c >= 0.0) {
    throw Error(ErrorKind::kPrecondition,
                "force_imaginary_axis: C = [[a, b], [c, -a]] needs a^2 + bc < 0");
  }
  if (!(sys.alpha > 0.0)) {
    throw Error(ErrorKind::kDomain, "force_imaginary_axis: alpha must be positive");
  }
  const RealMatrix& h = sys.h.body();
  const double h_tol = default_axis_tol(h);
  for (Complex v : eigenvalues(h).values) {
    if (std::abs(v.imag()) > h_tol) {
      throw Error(ErrorKind::kHypothesis,
                  "force_imaginary_axis: H(alpha) has non-real eigenvalues");
    }
  }

  const double alpha = sys.alpha;
  double l1 = 0.0;
  if (lambda1) {
    l1 = *lambda1;
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (Complex v : eigenvalues(sys.a).values) {
      if (v.imag() == 0.0 && std::abs(v.real()) > alpha && std::abs(v.real()) < best) {
        best = std::abs(v.real());
        l1 = v.real();
      }
    }
    if (!std::isfinite(best)) {
      throw Error(ErrorKind::kHypothesis,
                  "force_imaginary_axis: A has no real eigenvalue with |lambda| > alpha");
    }
  }
  if (!(std::abs(l1) > alpha)) {
    throw Error(ErrorKind::kHypothesis, "force_imaginary_axis: need |lambda1| > alpha");
  }

  // Common real eigenvector of A and A^T for lambda1.
  const Eigen::Index n = sys.a.rows();
  RealMatrix stacked(2 * n, n);
  stacked << sys.a - l1 * RealMatrix::Identity(n, n),
      sys.a.transpose() - l1 * RealMatrix::Identity(n, n);
  Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeFullV);
  Eigen::VectorXd u = svd.matrixV().col(n - 1);
  if ((stacked * u).norm() > default_eigen_tol(sys.a)) {
    throw Error(ErrorKind::kHypothesis,
                "force_imaginary_axis: lambda1 has no common eigenvector of A and A^T");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(u(i)) > 1e-12) {
      if (u(i) < 0) u = -u;
      break;
    }
  }

  ForcedPerturbation out{sys.h, {}, {}, l1, 0.0, 0.0, {}, {}, false, {}, 0.0,
                         0.0,   0.0, 0.0, {}, false};
  const double s = std::sqrt(l1 * l1 - alpha * alpha);
  out.beta_plus = (l1 + s) / alpha;
  out.beta_minus = (l1 - s) / alpha;
  out.basis = RealMatrix::Zero(2 * n, 2);
  out.basis.col(0).head(n) = out.beta_plus * u;
  out.basis.col(0).tail(n) = u;
  out.basis.col(1).head(n) = out.beta_minus * u;
  out.basis.col(1).tail(n) = u;
  out.core.resize(2, 2);
  out.core << a, b, c, -a;

  const PerturbationReport report = apply_rado(sys.h, spec_from_basis(sys.h, out.basis, out.core));
  out.k = report.updated;
  out.injected = report.replaced;
  out.spectrum = report.achieved;
  out.raw_update_norm = report.update_norm;
  out.bound = alpha + 2.0 * out.core.norm();

  const AxisTest t = has_imaginary_axis_eigenvalue(out.k.body(), 1e-7);
  out.reaches_axis = t.on_axis;
  out.witness = t.witness;
  out.min_abs_re = t.min_abs_re;

  const RealMatrix q = out.basis.householderQr().householderQ() * RealMatrix::Identity(2 * n, 2);
  const PerturbationReport ortho = apply_rado(sys.h, spec_from_basis(sys.h, q, out.core));
  out.orthonormal_update_norm = ortho.update_norm;
  out.orthonormal_injected = ortho.replaced;
  out.orthonormal_reaches_axis =
      has_imaginary_axis_eigenvalue(ortho.updated.body(), 1e-7).on_axis;
  return out;
}

StructuredEigenvector eigvec_structure(const RealMatrix& a, double alpha, Complex lambda) {
  const HAlphaSystem sys = build_h_alpha(a, alpha);
  const auto spectrum = eigenvalues(sys.h.body()).values;
  double nearest = std::numeric_limits<double>::infinity();
  for (Complex v : spectrum) nearest = std::min(nearest, std::abs(v - lambda));
  if (nearest > 1e-8 * std::max(1.0, std::abs(lambda))) {
    throw Error(ErrorKind::kNotEigenvalue,
                "eigvec_structure: lambda is not an eigenvalue of H(alpha)");
  }

  const ComplexMatrix hc = sys.h.body().cast<Complex>();
  StructuredEigenvector out;
  if (alpha == 0.0) {
    const Complex target[] = {lambda};
    out.z = eigenvectors_for(sys.h.body(), target, default_eigen_tol(sys.h.body()))
                .front()
                .vector;
  } else {
    const Eigen::Index n = a.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix shifted = a.cast<Complex>() - lambda * id;
    const ComplexMatrix m =
        alpha * alpha * id - (a.transpose().cast<Complex>() + lambda * id) * shifted;
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
    const double smallest = svd.singularValues()(n - 1);
    if (smallest > 1e-6 * m.norm() && smallest > 1e-12) {
      std::ostringstream os;
      os << "eigvec_structure: alpha^2 I - (A^T + lambda I)(A - lambda I) has no numerical "
            "null space (smallest singular value "
         << smallest << ")";
      throw Error(ErrorKind::kInconsistency, os.str());
    }
    const Eigen::VectorXcd x = svd.matrixV().col(n - 1);
    out.z.resize(2 * n);
    out.z.head(n) = alpha * x;
    out.z.tail(n) = shifted * x;
  }
  out.residual = (hc * out.z - lambda * out.z).norm() / out.z.norm();
  return out;
}

}  // namespace hamspec
