#include <gtest/gtest.h>

#include "ttstokes/connection.hpp"
#include "ttstokes/random.hpp"
#include "ttstokes/solutions.hpp"
#include "ttstokes/stokes.hpp"

using namespace ttstokes;

namespace {

TodaField random_field(int n1, Sampler& rng) {
  RealVector w = RealVector::Zero(n1), xwx = RealVector::Zero(n1);
  for (int i = 0; i < n1 - 1 - i; ++i) {
    w[i] = rng.uniform(-1.0, 1.0);
    xwx[i] = rng.uniform(-2.0, 2.0);
    w[n1 - 1 - i] = -w[i];
    xwx[n1 - 1 - i] = -xwx[i];
  }
  return TodaField::make(n1, w, std::exp(rng.uniform(-1.0, 1.0)), xwx);
}

RealVector symmetric_vector(int n1, Sampler& rng, double lo, double hi) {
  RealVector v(n1);
  for (int i = 0; i <= n1 / 2; ++i) v[i] = v[(n1 - i) % n1] = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST(TodaField, Validation) {
  EXPECT_THROW(TodaField::make(4, (RealVector(4) << 1, 0, 0, 1).finished(), 1.0, RealVector::Zero(4)), ConstraintError);
  EXPECT_THROW(TodaField::make(4, RealVector::Zero(4), 0.0, RealVector::Zero(4)), DomainError);
  EXPECT_THROW(TodaField::make(4, RealVector::Zero(3), 1.0, RealVector::Zero(4)), DimensionError);
  EXPECT_FALSE(TodaField::make_unchecked(4, (RealVector(4) << 1, 0, 0, 1).finished(), 1.0, RealVector::Zero(4)).admissible());
}

TEST(TodaField, WIsCyclicWeighted) {
  Sampler rng(71);
  const TodaField f = random_field(5, rng);
  const ComplexMatrix w = build_W(f);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (j == (i + 1) % 5) EXPECT_NEAR(w(i, j).real(), std::exp(f.w()[j] - f.w()[i]), 1e-15);
      else EXPECT_EQ(w(i, j), Complex(0.0));
    }
}

TEST(TodaField, RightHandSide) {
  // 2 (w_i)_{t tbar} = -e^{2(w_{i+1} - w_i)} + e^{2(w_i - w_{i-1})}
  Sampler rng(72);
  for (int n1 = 3; n1 <= 8; ++n1) {
    const TodaField f = random_field(n1, rng);
    const RealVector rhs = toda_rhs(f);
    const RealVector& w = f.w();
    for (int i = 0; i < n1; ++i)
      EXPECT_NEAR(rhs[i], -std::exp(2 * (w[(i + 1) % n1] - w[i])) + std::exp(2 * (w[i] - w[(i + n1 - 1) % n1])), 1e-12);
    EXPECT_NEAR(rhs.sum(), 0.0, 1e-12);
    // anti-symmetry is preserved by the flow
    for (int i = 0; i < n1; ++i) EXPECT_NEAR(rhs[i] + rhs[n1 - 1 - i], 0.0, 1e-12);
  }
}

TEST(Automorphisms, Orders) {
  Sampler rng(73);
  for (int n1 = 3; n1 <= 8; ++n1) {
    const ComplexMatrix x = rng.complex_matrix(n1);
    ComplexMatrix t = x;
    for (int k = 0; k < n1; ++k) t = tau(t);
    EXPECT_LT(max_abs_diff(t, x), 1e-12);
    EXPECT_LT(max_abs_diff(sigma(sigma(x)), x), 1e-14);
    EXPECT_LT(max_abs_diff(c_conj(c_conj(x)), x), 1e-14);
    // sigma and tau are Lie algebra automorphisms
    const ComplexMatrix y = rng.complex_matrix(n1);
    EXPECT_LT(max_abs_diff(sigma(ComplexMatrix(x * y - y * x)), ComplexMatrix(sigma(x) * sigma(y) - sigma(y) * sigma(x))), 1e-12);
    EXPECT_LT(max_abs_diff(tau(ComplexMatrix(x * y)), ComplexMatrix(tau(x) * tau(y))), 1e-12);
  }
}

TEST(Connection, PoleAtZero) {
  Sampler rng(74);
  EXPECT_THROW(build_alpha_hat(random_field(4, rng), 0.0), PoleError);
}

TEST(Connection, SymmetriesHold) {
  Sampler rng(75);
  for (int n1 = 3; n1 <= 8; ++n1)
    for (int s = 0; s < 20; ++s) {
      const SymmetryReport rep = symmetry_report(random_field(n1, rng), 4, rng.engine()());
      EXPECT_LT(rep.max(), 1e-10) << n1;
    }
}

TEST(Connection, NonAdmissibleFieldBreaksSymmetry) {
  const TodaField bad = TodaField::make_unchecked(4, (RealVector(4) << 0.3, 0.1, 0.2, -0.1).finished(), 1.0,
                                                  (RealVector(4) << 0.5, 0, 0, 0).finished());
  const SymmetryReport rep = symmetry_report(bad, 4, 1);
  EXPECT_GT(rep.anti_symmetry, 1e-3);
}

TEST(Diagonalizers, Identities) {
  Sampler rng(76);
  for (int n1 = 3; n1 <= 8; ++n1)
    for (int s = 0; s < 20; ++s) {
      const DiagonalizerReport rep = diagonalizer_check(random_field(n1, rng));
      EXPECT_LT(rep.max(), 1e-10) << n1 << " " << rep.vandermonde << " " << rep.zero << " " << rep.infinity << " "
                                  << rep.twist << " " << rep.pattern;
    }
}

TEST(Diagonalizers, ZeroBridgeEntries) {
  for (int n1 = 3; n1 <= 8; ++n1) {
    const ComplexMatrix d0 = d_zero(n1);
    for (int j = 0; j < n1; ++j) {
      const double turns = n1 % 2 == 0 ? j / (2.0 * n1) : static_cast<double>(j * (n1 / 2 + 1) % n1) / n1;
      EXPECT_LT(std::abs(d0(j, j) - std::polar(1.0, 2 * std::numbers::pi * turns)), 1e-14);
    }
    EXPECT_EQ(delta_matrix(n1)(0, n1 - 1), Complex(1.0));
    EXPECT_LT(max_abs_diff(ComplexMatrix(vandermonde(n1) * vandermonde(n1).adjoint()),
                           ComplexMatrix(n1 * ComplexMatrix::Identity(n1, n1))),
              1e-12);
  }
}

TEST(OmegaHat, Symmetries) {
  Sampler rng(77);
  for (int n1 = 3; n1 <= 8; ++n1)
    for (int s = 0; s < 20; ++s) {
      const OmegaHatData d = OmegaHatData::make(n1, symmetric_vector(n1, rng, 0.5, 2.0), symmetric_vector(n1, rng, -1.0, 3.0),
                                                std::polar(std::exp(rng.uniform(-1.0, 1.0)), rng.uniform(-3.0, 3.0)));
      EXPECT_LT(omega_hat_symmetry(d, 4, rng.engine()()).max(), 1e-10) << n1;
      EXPECT_LT((d.m() + 0.5 * gamma_from_k({n1, d.k(), d.c()}).values()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(OmegaHat, ResidueAndPole) {
  const OmegaHatData d = OmegaHatData::make(4, RealVector::Ones(4), RealVector::Zero(4), 1.0);
  EXPECT_THROW(build_omega_hat(d, 0.0), PoleError);
  // k = 0: m = 0, so only the double pole remains; eta is the cyclic matrix transposed
  const ComplexMatrix a = build_omega_hat(d, 2.0);
  EXPECT_LT(max_abs_diff(a, ComplexMatrix(-0.25 * cyclic_shift(4).transpose().cast<Complex>())), 1e-15);
}

TEST(OmegaHat, AsymmetricCBreaksAntiSymmetry) {
  const OmegaHatData d = OmegaHatData::make(4, (RealVector(4) << 1, 2, 1, 1).finished(), RealVector::Zero(4), 1.0);
  EXPECT_GT(omega_hat_symmetry(d, 4, 1).anti_symmetry, 1e-3);
  EXPECT_THROW(OmegaHatData::make(4, RealVector::Ones(4), RealVector::Zero(4), 0.0), DomainError);
}
