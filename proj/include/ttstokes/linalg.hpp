#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "ttstokes/error.hpp"

namespace ttstokes {

using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = Matrix<Complex>;
using ComplexVector = Vector<Complex>;
using RealMatrix = Matrix<double>;
using RealVector = Vector<double>;
using Pattern = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct Tolerance {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  static Tolerance uniform(double t) { return {t, t}; }
  double bound(double scale) const { return abs_tol + rel_tol * scale; }
};

// Monic polynomial with ascending coefficients c_0..c_degree, c_degree == 1.
template <typename Scalar>
class MonicPoly {
 public:
  MonicPoly() : coeffs_(Vector<Scalar>::Ones(1)) {}
  explicit MonicPoly(Vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw DimensionError("polynomial needs at least one coefficient");
    if (std::abs(coeffs_[coeffs_.size() - 1] - Scalar(1)) > 1e-12)
      throw DomainError("polynomial is not monic");
    coeffs_[coeffs_.size() - 1] = Scalar(1);
  }

  Eigen::Index degree() const { return coeffs_.size() - 1; }
  const Vector<Scalar>& coeffs() const { return coeffs_; }
  Scalar operator[](Eigen::Index k) const { return coeffs_[k]; }

  template <typename T>
  auto operator()(const T& x) const {
    decltype(Scalar(1) * x) acc = Scalar(1);
    for (Eigen::Index k = degree() - 1; k >= 0; --k) acc = acc * x + coeffs_[k];
    return acc;
  }

 private:
  Vector<Scalar> coeffs_;
};

using PolyCoeffs = MonicPoly<Complex>;

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (m.rows() == 0) throw DimensionError("matrix is empty");
}

// det(mu I - M) via Hessenberg reduction and the leading-minor recurrence on H.
template <typename Derived>
MonicPoly<typename Derived::Scalar> char_poly(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_square(m);
  const Eigen::Index n = m.rows();
  Matrix<Scalar> h = m;
  if (n > 2) h = Eigen::HessenbergDecomposition<Matrix<Scalar>>(h).matrixH();

  std::vector<Vector<Scalar>> p(n + 1);
  p[0] = Vector<Scalar>::Ones(1);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Vector<Scalar> next = Vector<Scalar>::Zero(k + 1);
    next.tail(k) += p[k - 1];
    next.head(k) -= h(k - 1, k - 1) * p[k - 1];
    Scalar sub = Scalar(1);
    for (Eigen::Index i = k - 1; i >= 1; --i) {
      sub *= h(i, i - 1);
      next.head(i) -= h(i - 1, k - 1) * sub * p[i - 1];
    }
    p[k] = std::move(next);
  }
  p[n][n] = Scalar(1);
  return MonicPoly<Scalar>(p[n]);
}

namespace detail {
ComplexVector complex_eigenvalues(const ComplexMatrix& m, Tolerance tol);
}

// Schur/QR eigenvalues; each one is checked against the recomputed char poly.
template <typename Derived>
ComplexVector eigenvalues(const Eigen::MatrixBase<Derived>& m, Tolerance tol = {}) {
  require_square(m);
  return detail::complex_eigenvalues(m.template cast<Complex>(), tol);
}

PolyCoeffs poly_from_roots(std::span<const Complex> roots);
inline PolyCoeffs poly_from_roots(const ComplexVector& roots) {
  return poly_from_roots(std::span<const Complex>(roots.data(), static_cast<size_t>(roots.size())));
}

struct MultisetMatch {
  bool matched = false;
  double max_distance = 0.0;
};

// Pairs closest elements first; matched iff sizes agree and every pair is within tol.
MultisetMatch match_multisets(std::span<const Complex> a, std::span<const Complex> b, double tol);
MultisetMatch match_multisets(const ComplexVector& a, const ComplexVector& b, double tol);

// Drops imaginary parts after checking they are below tol.
RealMatrix realify(const ComplexMatrix& m, double tol);

// Powers of omega = exp(2 pi i/(n+1)) and its square root, read from a table of angles.
class UnitRoots {
 public:
  explicit UnitRoots(int n_plus_1);

  int n_plus_1() const { return n1_; }
  Complex omega_pow(long k) const;
  Complex half_pow(long k) const;
  Complex pow(double exponent) const;

 private:
  int n1_;
  std::vector<Complex> half_;
};

RealMatrix matrix_unit(int dim, int i, int j);

}  // namespace ttstokes
