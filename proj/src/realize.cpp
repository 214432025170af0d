#include "hamspec/realize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace hamspec {
namespace {

std::string show(Complex z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.10g", z.real());
  } else if (z.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.10gi", z.imag());
  } else {
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  }
  return buf;
}

// Index of the unused entry nearest to target within tol, or npos.
std::size_t take_nearest(const std::vector<Complex>& values, std::vector<bool>& used,
                         Complex target, double tol) {
  std::size_t best = values.size();
  double best_dist = tol;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    const double d = std::abs(values[i] - target);
    if (d <= best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best != values.size()) used[best] = true;
  return best;
}

RealMatrix companion_from_roots(std::span<const double> roots) {
  const auto k = static_cast<Eigen::Index>(roots.size());
  // Ascending coefficients of prod (x - r): poly[j] multiplies x^j.
  std::vector<double> poly{1.0};
  for (double r : roots) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= r * poly[j];
    }
    poly = std::move(next);
  }
  RealMatrix c = RealMatrix::Zero(k, k);
  for (Eigen::Index i = 1; i < k; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) c(i, k - 1) = -poly[static_cast<std::size_t>(i)];
  return c;
}

}  // namespace

std::vector<Complex> RealizationPlan::denoted() const {
  std::vector<Complex> out;
  for (double l : real_pairs) {
    out.emplace_back(l, 0.0);
    out.emplace_back(-l, 0.0);
  }
  for (double b : imag_pairs) {
    out.emplace_back(0.0, b);
    out.emplace_back(0.0, -b);
  }
  for (const auto& q : quadruples) {
    out.emplace_back(q.re, q.im);
    out.emplace_back(q.re, -q.im);
    out.emplace_back(-q.re, -q.im);
    out.emplace_back(-q.re, q.im);
  }
  return out;
}

double default_closure_tol(const Spectrum& s) {
  double scale = 1.0;
  for (Complex z : s.entries) scale = std::max(scale, std::abs(z));
  return 1e-9 * scale;
}

RealizationPlan validate_h_realizable(const Spectrum& s, double tol) {
  for (Complex z : s.entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::kDomain, "spectrum contains a non-finite value");
    }
  }
  if (s.entries.empty() || s.size() % 2 != 0) {
    throw Error(ErrorKind::kParity, "spectrum size " + std::to_string(s.size()) +
                                        " is not a positive even number");
  }
  if (tol < 0.0) tol = default_closure_tol(s);

  std::vector<Complex> values = s.entries;
  for (Complex& z : values) {
    if (std::abs(z.imag()) <= tol) z = {z.real(), 0.0};
    if (std::abs(z.real()) <= tol) z = {0.0, z.imag()};
  }

  RealizationPlan plan;
  std::vector<bool> used(values.size(), false);
  auto require = [&](Complex target) {
    const std::size_t idx = take_nearest(values, used, target, tol);
    if (idx == values.size()) {
      throw Error(ErrorKind::kClosure,
                  "spectrum is not closed under negation and conjugation: " +
                      show(target) + " is missing");
    }
    return values[idx];
  };

  for (std::size_t i = 0; i < values.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Complex z = values[i];
    if (z.imag() == 0.0) {
      const Complex partner = require(-z);
      plan.real_pairs.push_back(0.5 * (std::abs(z.real()) + std::abs(partner.real())));
    } else if (z.real() == 0.0) {
      const Complex partner = require(std::conj(z));
      plan.imag_pairs.push_back(0.5 * (std::abs(z.imag()) + std::abs(partner.imag())));
    } else {
      const Complex c = require(std::conj(z));
      const Complex n = require(-z);
      const Complex nc = require(-std::conj(z));
      const double a = 0.25 * (std::abs(z.real()) + std::abs(c.real()) +
                               std::abs(n.real()) + std::abs(nc.real()));
      const double b = 0.25 * (std::abs(z.imag()) + std::abs(c.imag()) +
                               std::abs(n.imag()) + std::abs(nc.imag()));
      plan.quadruples.push_back({a, b});
    }
  }
  return plan;
}

HamMatrix realize_imag_pair(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorKind::kDomain, "realize_imag_pair: b must be positive");
  }
  RealMatrix m(2, 2);
  m << 0.0, b, -b, 0.0;
  return HamMatrix::certify(std::move(m));
}

HamMatrix realize_quadruple(double a, double b) {
  RealMatrix m(4, 4);
  // clang-format off
  m <<  a,  b,  0,  0,
       -b,  a,  0,  0,
        0,  0, -a,  b,
        0,  0, -b, -a;
  // clang-format on
  return HamMatrix::certify(std::move(m));
}

RealMatrix real_matrix_with_spectrum(std::span<const double> lambdas) {
  if (lambdas.empty()) {
    throw Error(ErrorKind::kDimension, "real_matrix_with_spectrum: empty list");
  }
  // Layer j collects the j-th occurrence of every distinct value.
  std::vector<std::vector<double>> layers;
  std::vector<std::pair<double, int>> seen;
  for (double l : lambdas) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [l](const auto& p) { return p.first == l; });
    int occurrence = 0;
    if (it == seen.end()) {
      seen.emplace_back(l, 1);
    } else {
      occurrence = it->second++;
    }
    if (static_cast<int>(layers.size()) <= occurrence) layers.resize(occurrence + 1);
    layers[static_cast<std::size_t>(occurrence)].push_back(l);
  }

  const auto n = static_cast<Eigen::Index>(lambdas.size());
  RealMatrix a = RealMatrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& layer : layers) {
    const RealMatrix c = companion_from_roots(layer);
    a.block(offset, offset, c.rows(), c.cols()) = c;
    offset += c.rows();
  }
  return a;
}

HamMatrix realize_real_list(std::span<const double> lambdas) {
  const RealMatrix a = real_matrix_with_spectrum(lambdas);
  const RealMatrix skew = 0.5 * (a - a.transpose());
  const RealMatrix sym = 0.5 * (a + a.transpose());
  const Eigen::Index n = a.rows();
  RealMatrix h(2 * n, 2 * n);
  h << skew, sym, sym, skew;
  return HamMatrix::certify(std::move(h));
}

HamMatrix direct_sum(std::span<const HamMatrix> blocks) {
  if (blocks.empty()) {
    throw Error(ErrorKind::kDimension, "direct_sum: no blocks");
  }
  if (blocks.size() == 1) return blocks.front();

  std::vector<int> half_dims;
  Eigen::Index total = 0;
  for (const auto& b : blocks) {
    half_dims.push_back(b.half_dim());
    total += b.dim();
  }
  RealMatrix stacked = RealMatrix::Zero(total, total);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    stacked.block(offset, offset, b.dim(), b.dim()) = b.body();
    offset += b.dim();
  }
  const RealMatrix p = shuffle_permutation(half_dims);
  return HamMatrix::certify(p * stacked * p.transpose());
}

HamMatrix realize_spectrum(const Spectrum& s) {
  const RealizationPlan plan = validate_h_realizable(s);
  std::vector<HamMatrix> blocks;
  if (!plan.real_pairs.empty()) blocks.push_back(realize_real_list(plan.real_pairs));
  for (double b : plan.imag_pairs) blocks.push_back(realize_imag_pair(b));
  for (const auto& q : plan.quadruples) blocks.push_back(realize_quadruple(q.re, q.im));
  return direct_sum(blocks);
}

}  // namespace hamspec
