#include "hamspec/realize.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "hamspec/eig.hpp"
#include "support.hpp"

namespace hamspec {
namespace {

using testing::Rng;

std::vector<Complex> spectrum_of(const HamMatrix& h) { return eigenvalues(h.body()).values; }

TEST(Validate, RealPairs) {
  const auto plan = validate_h_realizable({{1, -1, 2, -2}});
  EXPECT_EQ(plan.real_pairs, (std::vector<double>{1, 2}));
  EXPECT_TRUE(plan.imag_pairs.empty());
  EXPECT_TRUE(plan.quadruples.empty());
}

TEST(Validate, TwoQuadruples) {
  const auto plan = validate_h_realizable({testing::quadruple_pair_spectrum()});
  ASSERT_EQ(plan.quadruples.size(), 2u);
  EXPECT_EQ(plan.quadruples[0].re, 1.0);
  EXPECT_EQ(plan.quadruples[0].im, 1.0);
  EXPECT_EQ(plan.quadruples[1].re, 1.0);
  EXPECT_EQ(plan.quadruples[1].im, 2.0);
}

TEST(Validate, NamesMissingNegation) {
  try {
    validate_h_realizable({{{1, 1}, {1, -1}, 2, -2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kClosure);
    EXPECT_NE(std::string(e.what()).find("-1-1i"), std::string::npos) << e.what();
  }
}

TEST(Validate, ParityAndMultiplicity) {
  try {
    validate_h_realizable({{1, -1, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParity);
  }
  // Multiplicities must match: {1, 1, -1, 3} is even but not closed.
  EXPECT_THROW(validate_h_realizable({{1, 1, -1, 3}}), Error);
  const auto plan = validate_h_realizable({{0, 0, {0, 2}, {0, -2}}});
  EXPECT_EQ(plan.real_pairs, (std::vector<double>{0}));
  EXPECT_EQ(plan.imag_pairs, (std::vector<double>{2}));
}

TEST(Validate, PlanDenotesInput) {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_realizable_spectrum(rng);
    EXPECT_LE(pairing_distance(validate_h_realizable({s}).denoted(), s), 1e-15);
  }
}

TEST(RealizeImagPair, Form) {
  const HamMatrix h = realize_imag_pair(1.0);
  EXPECT_EQ(h.body(), build_J(1));
  const std::vector<Complex> expected{{0, 3}, {0, -3}};
  EXPECT_LE(pairing_distance(spectrum_of(realize_imag_pair(3.0)), expected), 1e-14);
  EXPECT_TRUE(is_hamiltonian(realize_imag_pair(2.0).body(), 0.0).hamiltonian);
  EXPECT_THROW(realize_imag_pair(0.0), Error);
  EXPECT_THROW(realize_imag_pair(-1.0), Error);
}

TEST(RealizeQuadruple, Spectra) {
  const std::vector<Complex> l11{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  EXPECT_LE(pairing_distance(spectrum_of(realize_quadruple(1, 1)), l11), 1e-14);
  const std::vector<Complex> l12{{1, 2}, {1, -2}, {-1, 2}, {-1, -2}};
  EXPECT_LE(pairing_distance(spectrum_of(realize_quadruple(1, 2)), l12), 1e-14);
  const std::vector<Complex> degenerate{{0, 5}, {0, -5}, {0, 5}, {0, -5}};
  EXPECT_LE(pairing_distance(spectrum_of(realize_quadruple(0, 5)), degenerate), 1e-14);
}

TEST(RealizeRealList, SingleValue) {
  const double one[] = {2.5};
  RealMatrix expected(2, 2);
  expected << 0, 2.5, 2.5, 0;
  EXPECT_EQ(realize_real_list(one).body(), expected);
}

TEST(RealizeRealList, CompanionCrossCheck) {
  const double values[] = {1, 2};
  const HamMatrix h = realize_real_list(values);
  EXPECT_EQ(h.residual(), 0.0);
  const std::vector<Complex> expected{1, 2, -1, -2};
  EXPECT_LE(pairing_distance(spectrum_of(h), expected), 1e-12);
  // The underlying real matrix is the companion of (x - 1)(x - 2), not diagonal.
  RealMatrix companion(2, 2);
  companion << 0, -2, 1, 3;
  EXPECT_EQ(real_matrix_with_spectrum(values), companion);
}

TEST(RealizeRealList, RepeatedValuesStaySemisimple) {
  const double values[] = {1, 1, 0.5, 2, 1};
  const std::vector<Complex> expected{1, 1, 1, 0.5, 2, -1, -1, -1, -0.5, -2};
  EXPECT_LE(pairing_distance(spectrum_of(realize_real_list(values)), expected), 1e-10);
}

TEST(DirectSum, SingleBlockUnchanged) {
  const HamMatrix q = realize_quadruple(1, 2);
  const HamMatrix blocks[] = {q};
  EXPECT_EQ(direct_sum(blocks).body(), q.body());
}

TEST(DirectSum, TwoQuadruples) {
  const HamMatrix blocks[] = {realize_quadruple(1, 1), realize_quadruple(1, 2)};
  const HamMatrix h = direct_sum(blocks);
  EXPECT_EQ(h.dim(), 8);
  EXPECT_LE(h.residual(), 1e-12);
  EXPECT_LE(pairing_distance(spectrum_of(h), testing::quadruple_pair_spectrum()), 1e-12);

  // The similar block-diagonal 8x8 form has the same spectrum.
  RealMatrix shown = RealMatrix::Zero(8, 8);
  shown.block(0, 0, 2, 2) << 1, 1, -1, 1;
  shown.block(2, 2, 2, 2) << 1, 2, -2, 1;
  shown.block(4, 4, 2, 2) << -1, 1, -1, -1;
  shown.block(6, 6, 2, 2) << -1, 2, -2, -1;
  EXPECT_LE(pairing_distance(eigenvalues(shown).values, spectrum_of(h)), 1e-12);
}

TEST(DirectSum, ThreeImaginaryPairs) {
  const HamMatrix blocks[] = {realize_imag_pair(1), realize_imag_pair(2), realize_imag_pair(3)};
  const std::vector<Complex> expected{{0, 1}, {0, -1}, {0, 2}, {0, -2}, {0, 3}, {0, -3}};
  EXPECT_LE(pairing_distance(spectrum_of(direct_sum(blocks)), expected), 1e-14);
}

TEST(RealizeSpectrum, TrivialPair) {
  RealMatrix expected(2, 2);
  expected << 0, 2, 2, 0;
  EXPECT_EQ(realize_spectrum({{2, -2}}).body(), expected);
}

TEST(RealizeSpectrum, SixteenValues) {
  const auto s = testing::sixteen_value_spectrum();
  const HamMatrix h = realize_spectrum({s});
  EXPECT_EQ(h.dim(), 16);
  EXPECT_LE(pairing_distance(spectrum_of(h), s), 1e-8);
}

TEST(RealizeSpectrum, RoundTripProperty) {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = testing::random_realizable_spectrum(rng);
    const HamMatrix h = realize_spectrum({s});
    EXPECT_LE(h.residual(), 1e-12);
    const auto achieved = spectrum_of(h);
    EXPECT_LE(pairing_distance(achieved, s), 1e-8);
    EXPECT_NO_THROW(validate_h_realizable({achieved}));
  }
}

TEST(BlockSimilarity, SpectralUnion) {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    const RealMatrix a11 = testing::random_matrix(rng, n, n);
    const RealMatrix a12 = testing::random_matrix(rng, n, n);
    RealMatrix m(2 * n, 2 * n);
    m << a11, a12, a12, a11;

    // P = [[I, -I], [I, I]] block-diagonalizes M.
    RealMatrix p(2 * n, 2 * n);
    const RealMatrix id = RealMatrix::Identity(n, n);
    p << id, -id, id, id;
    const RealMatrix d = p.inverse() * m * p;
    EXPECT_LE(d.topRightCorner(n, n).norm() + d.bottomLeftCorner(n, n).norm(), 1e-12);

    auto joined = eigenvalues(a11 + a12).values;
    const auto minus = eigenvalues(a11 - a12).values;
    joined.insert(joined.end(), minus.begin(), minus.end());
    EXPECT_LE(pairing_distance(eigenvalues(m).values, joined), 1e-8);
  }
}

TEST(Validate, AcceptsRandomHamiltonianSpectra) {
  Rng rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const RealMatrix h = testing::random_hamiltonian(rng, 1 + trial % 5);
    EXPECT_NO_THROW(validate_h_realizable({eigenvalues(h).values}, 1e-8)) << h;
  }
}

}  // namespace
}  // namespace hamspec
