#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttstokes/linalg.hpp"
#include "ttstokes/roots.hpp"

namespace ttstokes {

using RootCoeffs = std::map<Root, Complex>;

// Coefficients of the two fundamental Stokes factors. Missing keys read as 0.
class StokesParams {
 public:
  StokesParams(int n_plus_1, RootCoeffs head, RootCoeffs second);

  static StokesParams zero(int n_plus_1);
  // Coefficients satisfying the inversion relation; one free value per symmetric_free_roots entry.
  static StokesParams symmetric(int n_plus_1, std::span<const Complex> free);

  int n_plus_1() const { return n1_; }
  const RootCoeffs& head() const { return head_; }
  const RootCoeffs& second() const { return second_; }

 private:
  int n1_;
  RootCoeffs head_;
  RootCoeffs second_;
};

// Roots (head block then second block) whose coefficients parametrize the symmetric family.
std::vector<std::pair<TableRow, Root>> symmetric_free_roots(int n_plus_1);

// Diagonal plus arg(omega^i - omega^j) congruence.
Pattern q_pattern(int n_plus_1, int ell);
// Diagonal plus supported_roots(n_plus_1, ell).
Pattern supported_pattern(int n_plus_1, int ell);

ComplexMatrix build_q(int n_plus_1, TableRow which, const RootCoeffs& coeffs);
// I + c E_alpha multiplied left to right in the given order.
ComplexMatrix unipotent_product(int n_plus_1, std::span<const std::pair<Root, Complex>> factors);

RealMatrix cyclic_shift(int n_plus_1);          // Pi
RealMatrix signed_cyclic_shift(int n_plus_1);   // Pi hat, -1 at (n, 0)
RealMatrix twisted_cyclic(int n_plus_1);        // Pi hat for even n+1, Pi for odd

class MonodromyMatrix {
 public:
  MonodromyMatrix(int n_plus_1, ComplexMatrix matrix, Tolerance tol = {});

  int n_plus_1() const { return n1_; }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  int n1_;
  ComplexMatrix m_;
};

MonodromyMatrix build_m0(const StokesParams& params);

struct QFamily {
  int n_plus_1 = 3;
  std::map<int, ComplexMatrix> factors;  // ell -> Q at label 1 + ell/(n+1), ell = 0..2n+1
  std::map<std::string, double> residuals;
};

QFamily q_family(int n_plus_1, const ComplexMatrix& q1, const ComplexMatrix& q2, Tolerance tol = {});

// Conjugation relation with C (odd) or C tilde (even); exact only for real coefficients.
double reality_residual(const QFamily& family);
RealMatrix reality_matrix(int n_plus_1);

// (omega^{1/2} M)^{n+1} for even n+1, M^{n+1} for odd.
ComplexMatrix full_monodromy(const MonodromyMatrix& m0);

struct Decomposition {
  StokesParams params;
  double residual = 0.0;
};

// Inverse of build_m0 by linear least squares; residual measures distance from the space.
Decomposition decompose_m0(int n_plus_1, const ComplexMatrix& m);

}  // namespace ttstokes
