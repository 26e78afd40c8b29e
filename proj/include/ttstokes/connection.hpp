#pragma once

#include <cstdint>

#include "ttstokes/linalg.hpp"

namespace ttstokes {

// w and x w_x at one point; both anti-symmetric under i -> n-i.
class TodaField {
 public:
  static TodaField make(int n_plus_1, RealVector w, double x, RealVector xwx, double tol = 1e-12);
  // Skips the anti-symmetry checks; for negative controls.
  static TodaField make_unchecked(int n_plus_1, RealVector w, double x, RealVector xwx);

  int n_plus_1() const { return n1_; }
  const RealVector& w() const { return w_; }
  double x() const { return x_; }
  const RealVector& xwx() const { return xwx_; }
  bool admissible(double tol = 1e-12) const;

 private:
  TodaField(int n_plus_1, RealVector w, double x, RealVector xwx);

  int n1_;
  RealVector w_;
  double x_;
  RealVector xwx_;
};

ComplexMatrix delta_matrix(int n_plus_1);   // ones on the anti-diagonal
ComplexMatrix d_matrix(int n_plus_1);       // diag(1, omega, ..., omega^n)
ComplexMatrix vandermonde(int n_plus_1);    // (omega^{ij})
ComplexMatrix d_zero(int n_plus_1);         // diag(omega^{j/2}) even, diag(omega^{j(m+1)}) odd

ComplexMatrix tau(const ComplexMatrix& x);
ComplexMatrix sigma(const ComplexMatrix& x);
ComplexMatrix c_conj(const ComplexMatrix& x);

ComplexMatrix build_W(const TodaField& f);
ComplexMatrix build_alpha_hat(const TodaField& f, Complex zeta);
RealVector toda_rhs(const TodaField& f);

// Identities for the coefficient A of the form A dzeta, so substitutions carry their Jacobians.
struct SymmetryReport {
  double cyclic = 0.0;        // tau(A(z)) = omega A(omega z)
  double anti_symmetry = 0.0; // sigma(A(z)) = -A(-z)
  double reality = 0.0;       // c(A(z)) = -A(z') / (x^2 conj(z)^2), z' = 1/(x^2 conj(z))
  double extra_reality = 0.0; // conj(A(conj z)) = A(z)
  double real_form = 0.0;     // on |z| = 1/x, B = i z A(z) satisfies Delta conj(B) Delta = B

  double max() const;
};

SymmetryReport symmetry_report(const TodaField& f, int zeta_samples, std::uint64_t seed);

struct DiagonalizerReport {
  double vandermonde = 0.0;  // Pi = Omega d Omega^-1
  double zero = 0.0;         // -W = P0 (-d) P0^-1
  double infinity = 0.0;     // x^2 W^T = Pinf (x^2 d) Pinf^-1
  double twist = 0.0;        // Pi hat = omega^{-1/2} d0^-1 Pi d0, or Pi = omega^{-(m+1)} d0^-1 Pi d0
  double pattern = 0.0;      // d0^-1 Q d0 keeps the Stokes pattern

  double max() const;
};

DiagonalizerReport diagonalizer_check(const TodaField& f);

class OmegaHatData {
 public:
  static OmegaHatData make(int n_plus_1, RealVector c, RealVector k, Complex z);

  int n_plus_1() const { return n1_; }
  const RealVector& c() const { return c_; }
  const RealVector& k() const { return k_; }
  Complex z() const { return z_; }
  const RealVector& m() const { return m_; }
  double N() const { return n1_ + k_.sum(); }
  ComplexVector p() const;  // c_i z^{k_i}, principal branch

 private:
  int n1_ = 3;
  RealVector c_, k_, m_;
  Complex z_;
};

ComplexMatrix build_omega_hat(const OmegaHatData& d, Complex lambda);

struct OmegaHatSymmetry {
  double cyclic = 0.0;
  double anti_symmetry = 0.0;

  double max() const { return std::max(cyclic, anti_symmetry); }
};

OmegaHatSymmetry omega_hat_symmetry(const OmegaHatData& d, int samples, std::uint64_t seed);

}  // namespace ttstokes
