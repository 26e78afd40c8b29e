#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "ttstokes/linalg.hpp"
#include "ttstokes/random.hpp"
#include "ttstokes/stokes.hpp"

using namespace ttstokes;

TEST(CharPoly, MatchesFaddeevLeVerrier) {
  Sampler rng(11);
  for (int n = 1; n <= 10; ++n)
    for (int s = 0; s < 5; ++s) {
      const ComplexMatrix m = rng.complex_matrix(n);
      const ComplexVector ref = oracle::faddeev_leverrier(m);
      EXPECT_LT(max_abs_diff(char_poly(m).coeffs(), ref) / std::max(1.0, ref.cwiseAbs().maxCoeff()), 1e-10) << "n=" << n;
    }
}

TEST(CharPoly, CyclicShift) {
  // mu^3 - 1
  const PolyCoeffs p = char_poly(ComplexMatrix(cyclic_shift(3).cast<Complex>()));
  ComplexVector expected(4);
  expected << -1, 0, 0, 1;
  EXPECT_LT(max_abs_diff(p.coeffs(), expected), 1e-14);
}

TEST(CharPoly, RealInputGivesRealCoefficients) {
  RealMatrix m(3, 3);
  m << 2, -1, 0, 4, 0.5, 3, -2, 1, 1;
  const auto p = char_poly(m);
  const ComplexVector ref = oracle::faddeev_leverrier(m.cast<Complex>());
  EXPECT_LT(max_abs_diff(p.coeffs().cast<Complex>(), ref), 1e-12);
}

TEST(CharPoly, ConstantTermIsSignedDeterminant) {
  Sampler rng(12);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix m = rng.complex_matrix(n);
    const Complex det = oracle::cofactor_det(m);
    EXPECT_LT(std::abs((n % 2 == 0 ? 1.0 : -1.0) * char_poly(m)[0] - det), 1e-10 * std::max(1.0, std::abs(det)));
  }
}

TEST(CharPoly, RejectsNonSquare) {
  EXPECT_THROW(char_poly(ComplexMatrix(2, 3)), DimensionError);
  EXPECT_THROW(eigenvalues(ComplexMatrix(0, 0)), DimensionError);
}

TEST(Eigenvalues, CubeRootsOfUnity) {
  const ComplexVector ev = eigenvalues(cyclic_shift(3));
  ComplexVector expected(3);
  for (int k = 0; k < 3; ++k) expected[k] = std::polar(1.0, 2 * std::numbers::pi * k / 3);
  EXPECT_TRUE(match_multisets(ev, expected, 1e-12).matched);
}

TEST(Eigenvalues, RoundTripThroughPolynomial) {
  Sampler rng(13);
  for (int n = 2; n <= 10; ++n) {
    const ComplexMatrix m = rng.complex_matrix(n);
    const PolyCoeffs p = char_poly(m);
    EXPECT_LT(max_abs_diff(poly_from_roots(eigenvalues(m)).coeffs(), p.coeffs()) / p.coeffs().cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Eigenvalues, DiagonalMatrix) {
  ComplexVector d(4);
  d << Complex(1, 2), -3.0, Complex(0, 0.5), 7.0;
  const ComplexMatrix m = d.asDiagonal();
  EXPECT_LT(match_multisets(eigenvalues(m), d, 1e-12).max_distance, 1e-12);
}

TEST(PolyFromRoots, ExpandsProduct) {
  // (mu - 1)(mu - 2)(mu - 3)
  ComplexVector roots(3);
  roots << 1, 2, 3;
  ComplexVector expected(4);
  expected << -6, 11, -6, 1;
  EXPECT_LT(max_abs_diff(poly_from_roots(roots).coeffs(), expected), 1e-14);
  EXPECT_EQ(poly_from_roots(ComplexVector(0)).degree(), 0);
}

TEST(MonicPoly, ValidatesLeadingCoefficient) {
  ComplexVector c(2);
  c << 1, 2;
  EXPECT_THROW(PolyCoeffs{c}, DomainError);
  EXPECT_THROW(PolyCoeffs{ComplexVector(0)}, DimensionError);
  c << 3, 1;
  EXPECT_EQ(PolyCoeffs(c)(Complex(2.0)), Complex(5.0));
}

TEST(MatchMultisets, OrderFree) {
  ComplexVector a(3), b(3);
  a << 1, 2, Complex(0, 1);
  b << Complex(0, 1), 1, 2.0 + 1e-10;
  const MultisetMatch r = match_multisets(a, b, 1e-9);
  EXPECT_TRUE(r.matched);
  EXPECT_NEAR(r.max_distance, 1e-10, 1e-15);
  EXPECT_FALSE(match_multisets(a, b, 1e-11).matched);
  EXPECT_FALSE(match_multisets(a, ComplexVector(ComplexVector::Ones(2)), 1.0).matched);
}

TEST(MatchMultisets, RepeatedValuesCountMultiplicity) {
  ComplexVector a(3), b(3);
  a << 1, 1, 2;
  b << 1, 2, 2;
  EXPECT_FALSE(match_multisets(a, b, 0.5).matched);
}

TEST(Realify, RejectsImaginaryParts) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(realify(m, 1e-12), RealMatrix::Identity(2, 2));
  m(0, 1) = Complex(0, 1e-6);
  EXPECT_THROW(realify(m, 1e-9), NumericalError);
}

TEST(UnitRoots, Consistent) {
  for (int n1 = 3; n1 <= 12; ++n1) {
    const UnitRoots w(n1);
    const Complex omega = std::polar(1.0, 2 * std::numbers::pi / n1);
    EXPECT_LT(std::abs(w.omega_pow(1) - omega), 1e-15);
    EXPECT_LT(std::abs(w.omega_pow(n1) - 1.0), 1e-15);
    EXPECT_LT(std::abs(w.omega_pow(-1) - std::conj(omega)), 1e-15);
    EXPECT_LT(std::abs(w.half_pow(2) - w.omega_pow(1)), 1e-15);
    EXPECT_LT(std::abs(w.half_pow(1) * w.half_pow(1) - omega), 1e-15);
    EXPECT_LT(std::abs(w.pow(0.5) - w.half_pow(1)), 1e-14);
  }
  EXPECT_THROW(UnitRoots(0), DomainError);
}

TEST(MatrixUnit, SingleEntry) {
  const RealMatrix e = matrix_unit(4, 2, 1);
  EXPECT_EQ(e.sum(), 1.0);
  EXPECT_EQ(e(2, 1), 1.0);
}
