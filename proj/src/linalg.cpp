#include "ttstokes/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace ttstokes {

namespace detail {

using WideComplex = std::complex<long double>;
using WideMatrix = Eigen::Matrix<WideComplex, Eigen::Dynamic, Eigen::Dynamic>;

// QR in extended precision: the regular classes we feed in are companion-like and
// lose several digits near clustered eigenvalues.
ComplexVector complex_eigenvalues(const ComplexMatrix& m, Tolerance tol) {
  Eigen::ComplexEigenSolver<WideMatrix> solver(m.cast<WideComplex>(), false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration did not converge", std::nan(""));
  const ComplexVector ev = solver.eigenvalues().cast<Complex>();

  const PolyCoeffs p = char_poly(m);
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    const double r = std::abs(ev[k]);
    double scale = 0.0;
    double rk = 1.0;
    for (Eigen::Index j = 0; j <= p.degree(); ++j) {
      scale += std::abs(p[j]) * rk;
      rk *= r;
    }
    const double residual = std::abs(p(ev[k]));
    if (residual > tol.bound(scale))
      throw NumericalError("eigenvalue fails the characteristic polynomial check", residual);
  }
  return ev;
}

}  // namespace detail

PolyCoeffs poly_from_roots(std::span<const Complex> roots) {
  using Wide = std::complex<long double>;
  std::vector<Wide> c(roots.size() + 1, Wide(0));
  c[0] = 1.0L;
  size_t deg = 0;
  for (const Complex& root : roots) {
    // multiply by (mu - r)
    const Wide r(root.real(), root.imag());
    for (size_t k = deg + 1; k >= 1; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
    ++deg;
  }
  ComplexVector out(static_cast<Eigen::Index>(c.size()));
  for (size_t k = 0; k < c.size(); ++k) out[static_cast<Eigen::Index>(k)] = Complex(static_cast<double>(c[k].real()), static_cast<double>(c[k].imag()));
  return PolyCoeffs(out);
}

MultisetMatch match_multisets(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  if (a.size() != b.size()) return {false, std::numeric_limits<double>::infinity()};
  std::vector<std::tuple<double, size_t, size_t>> pairs;
  pairs.reserve(a.size() * b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) pairs.emplace_back(std::abs(a[i] - b[j]), i, j);
  std::sort(pairs.begin(), pairs.end());

  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  MultisetMatch out{true, 0.0};
  size_t taken = 0;
  for (const auto& [d, i, j] : pairs) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    out.max_distance = std::max(out.max_distance, d);
    if (++taken == a.size()) break;
  }
  out.matched = out.max_distance <= tol;
  return out;
}

MultisetMatch match_multisets(const ComplexVector& a, const ComplexVector& b, double tol) {
  return match_multisets(std::span<const Complex>(a.data(), static_cast<size_t>(a.size())),
                         std::span<const Complex>(b.data(), static_cast<size_t>(b.size())), tol);
}

RealMatrix realify(const ComplexMatrix& m, double tol) {
  const double im = m.size() ? m.imag().cwiseAbs().maxCoeff() : 0.0;
  if (im > tol) throw NumericalError("matrix is not real", im);
  return m.real();
}

UnitRoots::UnitRoots(int n_plus_1) : n1_(n_plus_1) {
  if (n_plus_1 < 1) throw DomainError("n+1 must be positive");
  half_.resize(static_cast<size_t>(2 * n1_));
  for (int k = 0; k < 2 * n1_; ++k) half_[k] = std::polar(1.0, std::numbers::pi * k / n1_);
}

Complex UnitRoots::half_pow(long k) const {
  const long period = 2L * n1_;
  return half_[static_cast<size_t>(((k % period) + period) % period)];
}

Complex UnitRoots::omega_pow(long k) const { return half_pow(2 * k); }

Complex UnitRoots::pow(double exponent) const {
  return std::polar(1.0, 2.0 * std::numbers::pi * exponent / n1_);
}

RealMatrix matrix_unit(int dim, int i, int j) {
  RealMatrix e = RealMatrix::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

}  // namespace ttstokes
