#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ttstokes/linalg.hpp"
#include "ttstokes/random.hpp"
#include "ttstokes/steinberg.hpp"
#include "ttstokes/stokes.hpp"

namespace ttstokes {

// Asymptotic data; gamma_i + gamma_{n-i} = 0.
class GammaVector {
 public:
  GammaVector(int n_plus_1, RealVector gamma, double tol = 1e-12);
  // gamma_0..gamma_{m-1}; the rest follows from anti-symmetry.
  static GammaVector from_free(int n_plus_1, std::span<const double> free);

  int n_plus_1() const { return n1_; }
  const RealVector& values() const { return g_; }
  double operator[](Eigen::Index i) const { return g_[i]; }
  RealVector free() const { return g_.head(n1_ / 2); }

 private:
  int n1_;
  RealVector g_;
};

// Cyclic constraints gamma_{i+1} - gamma_i >= -2 (i mod n+1) and anti-symmetry.
bool polytope_contains(int n_plus_1, const RealVector& gamma, double tol = 1e-9);
bool polytope_contains(const GammaVector& g, double tol = 1e-9);

ComplexVector eigenvalues_from_gamma(const GammaVector& g, std::vector<std::string>* warnings = nullptr);

// Eigenvalues of omega^{-1/2} d^{-1} omega^{m} (even) or omega^{-(m+1)} d^{-1} omega^{m} (odd), m_i = -gamma_i/2.
ComplexVector formal_monodromy_eigenvalues(const GammaVector& g);

MonodromyMatrix gamma_to_m0(const SectionCalibration& cal, const GammaVector& g, Tolerance tol = {});

// Closed forms for n+1 = 4 and 5.
std::pair<double, double> s_formulas(const GammaVector& g);
// The same two numbers read from characteristic polynomial coefficients.
std::pair<double, double> s_from_char_poly(int n_plus_1, const PolyCoeffs& p);

class AlcovePoint {
 public:
  AlcovePoint(int n_plus_1, RealVector rho, double tol = 1e-12);

  int n_plus_1() const { return n1_; }
  const RealVector& values() const { return rho_; }
  bool in_alcove(double tol = 1e-9) const;
  bool p_fixed(double tol = 1e-9) const;
  bool in_p_subset(double tol = 1e-9) const { return in_alcove(tol) && p_fixed(tol); }

 private:
  int n1_;
  RealVector rho_;
};

// (1,3,...,2m-1,1-2m,...,-1) for n+1 = 2m, (-2m,...,2m) for n+1 = 2m+1.
RealVector alcove_shift(int n_plus_1);
AlcovePoint alcove_coords(const GammaVector& g);
GammaVector alcove_to_gamma(const AlcovePoint& p);

struct AsymptoticDataK {
  int n_plus_1 = 3;
  RealVector k;
  RealVector c;

  double N() const { return n_plus_1 + k.sum(); }
  void validate() const;
};

RealVector m_from_k(int n_plus_1, const RealVector& k);
GammaVector gamma_from_k(const AsymptoticDataK& a);

// Uniform draw from the p-fixed alcove subset, mapped to gamma.
GammaVector sample_polytope(int n_plus_1, Sampler& rng);

}  // namespace ttstokes
