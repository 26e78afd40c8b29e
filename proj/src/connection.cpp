#include "ttstokes/connection.hpp"

#include <algorithm>
#include <cmath>

#include "ttstokes/random.hpp"
#include "ttstokes/roots.hpp"
#include "ttstokes/solutions.hpp"
#include "ttstokes/stokes.hpp"

namespace ttstokes {

TodaField::TodaField(int n_plus_1, RealVector w, double x, RealVector xwx)
    : n1_(require_rank(n_plus_1)), w_(std::move(w)), x_(x), xwx_(std::move(xwx)) {
  if (w_.size() != n1_ || xwx_.size() != n1_) throw DimensionError("field vectors need n+1 entries");
  if (!(x_ > 0.0)) throw DomainError("x must be positive");
}

TodaField TodaField::make(int n_plus_1, RealVector w, double x, RealVector xwx, double tol) {
  TodaField f(n_plus_1, std::move(w), x, std::move(xwx));
  if (!f.admissible(tol)) throw ConstraintError("w or x w_x is not anti-symmetric");
  return f;
}

TodaField TodaField::make_unchecked(int n_plus_1, RealVector w, double x, RealVector xwx) {
  return TodaField(n_plus_1, std::move(w), x, std::move(xwx));
}

bool TodaField::admissible(double tol) const {
  for (int i = 0; i < n1_; ++i)
    if (std::abs(w_[i] + w_[n1_ - 1 - i]) > tol || std::abs(xwx_[i] + xwx_[n1_ - 1 - i]) > tol) return false;
  return true;
}

ComplexMatrix delta_matrix(int n_plus_1) { return ComplexMatrix::Identity(n_plus_1, n_plus_1).rowwise().reverse(); }

ComplexMatrix d_matrix(int n_plus_1) {
  const UnitRoots w(n_plus_1);
  ComplexVector d(n_plus_1);
  for (int i = 0; i < n_plus_1; ++i) d[i] = w.omega_pow(i);
  return d.asDiagonal();
}

ComplexMatrix vandermonde(int n_plus_1) {
  const UnitRoots w(n_plus_1);
  ComplexMatrix o(n_plus_1, n_plus_1);
  for (int i = 0; i < n_plus_1; ++i)
    for (int j = 0; j < n_plus_1; ++j) o(i, j) = w.omega_pow(static_cast<long>(i) * j);
  return o;
}

ComplexMatrix d_zero(int n_plus_1) {
  const UnitRoots w(n_plus_1);
  const int m = n_plus_1 / 2;
  ComplexVector d(n_plus_1);
  for (int j = 0; j < n_plus_1; ++j)
    d[j] = n_plus_1 % 2 == 0 ? w.half_pow(j) : w.omega_pow(static_cast<long>(j) * (m + 1));
  return d.asDiagonal();
}

ComplexMatrix tau(const ComplexMatrix& x) {
  const ComplexMatrix d = d_matrix(static_cast<int>(x.rows()));
  return d.adjoint() * x * d;
}

ComplexMatrix sigma(const ComplexMatrix& x) {
  const ComplexMatrix delta = delta_matrix(static_cast<int>(x.rows()));
  return -delta * x.transpose() * delta;
}

ComplexMatrix c_conj(const ComplexMatrix& x) {
  const ComplexMatrix delta = delta_matrix(static_cast<int>(x.rows()));
  return delta * x.conjugate() * delta;
}

ComplexMatrix build_W(const TodaField& f) {
  const int n1 = f.n_plus_1();
  const RealVector& w = f.w();
  ComplexMatrix m = ComplexMatrix::Zero(n1, n1);
  for (int i = 0; i + 1 < n1; ++i) m(i, i + 1) = std::exp(w[i + 1] - w[i]);
  m(n1 - 1, 0) = std::exp(w[0] - w[n1 - 1]);
  return m;
}

ComplexMatrix build_alpha_hat(const TodaField& f, Complex zeta) {
  if (zeta == Complex(0.0)) throw PoleError("the connection has a pole at zeta = 0");
  const ComplexMatrix w = build_W(f);
  const double x2 = f.x() * f.x();
  ComplexMatrix a = -w.transpose() / (zeta * zeta) + x2 * w;
  a.diagonal() -= f.xwx().cast<Complex>() / zeta;
  return a;
}

RealVector toda_rhs(const TodaField& f) {
  const ComplexMatrix w = build_W(f);
  const ComplexMatrix comm = w.transpose() * w - w * w.transpose();
  return comm.diagonal().real();
}

double SymmetryReport::max() const {
  return std::max({cyclic, anti_symmetry, reality, extra_reality, real_form});
}

SymmetryReport symmetry_report(const TodaField& f, int zeta_samples, std::uint64_t seed) {
  Sampler rng(seed);
  const int n1 = f.n_plus_1();
  const UnitRoots w(n1);
  const double x = f.x();
  const Complex i(0.0, 1.0);
  const ComplexMatrix delta = delta_matrix(n1);
  SymmetryReport rep;
  const auto rel = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return max_abs_diff(a, b) / std::max(1.0, b.cwiseAbs().maxCoeff());
  };
  for (int s = 0; s < zeta_samples; ++s) {
    const Complex z = std::polar(std::exp(rng.uniform(-1.0, 1.0)) / x, rng.uniform(-3.14159, 3.14159));
    const ComplexMatrix a = build_alpha_hat(f, z);
    rep.cyclic = std::max(rep.cyclic, rel(tau(a), w.omega_pow(1) * build_alpha_hat(f, w.omega_pow(1) * z)));
    rep.anti_symmetry = std::max(rep.anti_symmetry, rel(sigma(a), -build_alpha_hat(f, -z)));
    const Complex zr = 1.0 / (x * x * std::conj(z));
    const ComplexMatrix rhs = -build_alpha_hat(f, zr) / (x * x * std::conj(z) * std::conj(z));
    rep.reality = std::max(rep.reality, rel(c_conj(a), rhs));
    rep.extra_reality = std::max(rep.extra_reality, rel(ComplexMatrix(build_alpha_hat(f, std::conj(z)).conjugate()), a));

    const Complex zc = std::polar(1.0 / x, rng.uniform(-3.14159, 3.14159));
    const ComplexMatrix b = i * zc * build_alpha_hat(f, zc);
    rep.real_form = std::max(rep.real_form, rel(ComplexMatrix(delta * b.conjugate() * delta), b));
  }
  return rep;
}

double DiagonalizerReport::max() const { return std::max({vandermonde, zero, infinity, twist, pattern}); }

DiagonalizerReport diagonalizer_check(const TodaField& f) {
  const int n1 = f.n_plus_1();
  const UnitRoots u(n1);
  const ComplexMatrix pi = cyclic_shift(n1).cast<Complex>();
  const ComplexMatrix omega = vandermonde(n1);
  const ComplexMatrix omega_inv = omega.inverse();
  const ComplexMatrix d = d_matrix(n1);
  const ComplexMatrix d0 = d_zero(n1);
  const ComplexMatrix w = build_W(f);
  const double x2 = f.x() * f.x();

  ComplexVector ew(n1);
  for (int i = 0; i < n1; ++i) ew[i] = std::exp(f.w()[i]);
  const ComplexMatrix e_plus = ew.asDiagonal();
  const ComplexMatrix e_minus = ew.cwiseInverse().asDiagonal();

  DiagonalizerReport rep;
  rep.vandermonde = max_abs_diff(omega * d * omega_inv, pi);
  const ComplexMatrix p0 = e_minus * omega * d0;
  rep.zero = max_abs_diff(p0 * (-d) * p0.inverse(), ComplexMatrix(-w)) / std::max(1.0, w.cwiseAbs().maxCoeff());
  const ComplexMatrix pinf = e_plus * omega_inv * d0.inverse();
  rep.infinity = max_abs_diff(pinf * (x2 * d) * pinf.inverse(), ComplexMatrix(x2 * w.transpose())) /
                 std::max(1.0, x2 * w.cwiseAbs().maxCoeff());

  const ComplexMatrix bridged = d0.inverse() * pi * d0;
  if (n1 % 2 == 0) rep.twist = max_abs_diff(ComplexMatrix(u.half_pow(-1) * bridged), signed_cyclic_shift(n1).cast<Complex>());
  else rep.twist = max_abs_diff(ComplexMatrix(u.omega_pow(-(n1 / 2 + 1)) * bridged), pi);

  for (int ell = 0; ell < 2; ++ell) {
    RootCoeffs coeffs;
    for (const Root& r : table_supported_roots(n1, ell == 0 ? TableRow::Head : TableRow::Second)) coeffs[r] = 1.0;
    const ComplexMatrix q = build_q(n1, ell == 0 ? TableRow::Head : TableRow::Second, coeffs);
    const ComplexMatrix conj = d0.inverse() * q * d0;
    const Pattern pat = q_pattern(n1, ell);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) {
        if (i == j) rep.pattern = std::max(rep.pattern, std::abs(conj(i, j) - 1.0));
        else if (!pat(i, j)) rep.pattern = std::max(rep.pattern, std::abs(conj(i, j)));
        else rep.pattern = std::max(rep.pattern, std::abs(std::abs(conj(i, j)) - 1.0));
      }
  }
  return rep;
}

OmegaHatData OmegaHatData::make(int n_plus_1, RealVector c, RealVector k, Complex z) {
  AsymptoticDataK a{n_plus_1, k, c};
  a.validate();
  if (c.size() != n_plus_1) throw DimensionError("c needs n+1 entries");
  if (z == Complex(0.0)) throw DomainError("z must be nonzero");
  OmegaHatData d;
  d.n1_ = n_plus_1;
  d.c_ = std::move(c);
  d.m_ = m_from_k(n_plus_1, k);
  d.k_ = std::move(k);
  d.z_ = z;
  return d;
}

ComplexVector OmegaHatData::p() const {
  ComplexVector p(n1_);
  for (int i = 0; i < n1_; ++i) p[i] = c_[i] * std::pow(z_, k_[i]);
  return p;
}

ComplexMatrix build_omega_hat(const OmegaHatData& d, Complex lambda) {
  if (lambda == Complex(0.0)) throw PoleError("the connection has a pole at lambda = 0");
  const int n1 = d.n_plus_1();
  const ComplexVector p = d.p();
  ComplexMatrix eta = ComplexMatrix::Zero(n1, n1);
  eta(0, n1 - 1) = p[0];
  for (int i = 1; i < n1; ++i) eta(i, i - 1) = p[i];
  ComplexMatrix out = -(static_cast<double>(n1) / d.N()) * d.z() / (lambda * lambda) * eta;
  out.diagonal() += d.m().cast<Complex>() / lambda;
  return out;
}

OmegaHatSymmetry omega_hat_symmetry(const OmegaHatData& d, int samples, std::uint64_t seed) {
  Sampler rng(seed);
  const UnitRoots w(d.n_plus_1());
  OmegaHatSymmetry rep;
  const auto rel = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return max_abs_diff(a, b) / std::max(1.0, b.cwiseAbs().maxCoeff());
  };
  for (int s = 0; s < samples; ++s) {
    const Complex lambda = std::polar(std::exp(rng.uniform(-1.0, 1.0)), rng.uniform(-3.14159, 3.14159));
    const ComplexMatrix a = build_omega_hat(d, lambda);
    rep.cyclic = std::max(rep.cyclic, rel(tau(a), w.omega_pow(1) * build_omega_hat(d, w.omega_pow(1) * lambda)));
    rep.anti_symmetry = std::max(rep.anti_symmetry, rel(sigma(a), -build_omega_hat(d, -lambda)));
  }
  return rep;
}

}  // namespace ttstokes
