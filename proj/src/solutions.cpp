#include "ttstokes/solutions.hpp"

#include <algorithm>
#include <cmath>

namespace ttstokes {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

GammaVector::GammaVector(int n_plus_1, RealVector gamma, double tol) : n1_(require_rank(n_plus_1)), g_(std::move(gamma)) {
  if (g_.size() != n1_) throw DimensionError("gamma needs " + std::to_string(n1_) + " entries");
  if (!g_.allFinite()) throw DomainError("gamma has non-finite entries");
  for (int i = 0; i < n1_; ++i)
    if (std::abs(g_[i] + g_[n1_ - 1 - i]) > tol)
      throw ConstraintError("gamma is not anti-symmetric at index " + std::to_string(i));
}

GammaVector GammaVector::from_free(int n_plus_1, std::span<const double> free) {
  require_rank(n_plus_1);
  const int m = n_plus_1 / 2;
  if (static_cast<int>(free.size()) != m) throw DimensionError("expected " + std::to_string(m) + " free gamma values");
  RealVector g = RealVector::Zero(n_plus_1);
  for (int i = 0; i < m; ++i) {
    g[i] = free[static_cast<size_t>(i)];
    g[n_plus_1 - 1 - i] = -free[static_cast<size_t>(i)];
  }
  return GammaVector(n_plus_1, g);
}

bool polytope_contains(int n_plus_1, const RealVector& gamma, double tol) {
  if (gamma.size() != n_plus_1) throw DimensionError("gamma has the wrong length");
  for (int i = 0; i < n_plus_1; ++i) {
    if (std::abs(gamma[i] + gamma[n_plus_1 - 1 - i]) > tol) return false;
    if (gamma[(i + 1) % n_plus_1] - gamma[i] < -2.0 - tol) return false;
  }
  return true;
}

bool polytope_contains(const GammaVector& g, double tol) { return polytope_contains(g.n_plus_1(), g.values(), tol); }

ComplexVector eigenvalues_from_gamma(const GammaVector& g, std::vector<std::string>* warnings) {
  const int n1 = g.n_plus_1();
  const int n = n1 - 1;
  const int m = n1 / 2;
  if (warnings && !polytope_contains(g)) warnings->push_back("gamma lies outside the solution polytope");
  ComplexVector ev(n1);
  for (int j = 0; j < m; ++j) {
    const double phase = n1 % 2 == 0 ? kPi * (g[j] + 2 * j + 1) / n1 : kPi * (g[j] - n + 2 * j) / n1;
    ev[2 * j] = std::polar(1.0, phase);
    ev[2 * j + 1] = std::polar(1.0, -phase);
  }
  if (n1 % 2 == 1) ev[n] = 1.0;
  return ev;
}

ComplexVector formal_monodromy_eigenvalues(const GammaVector& g) {
  const int n1 = g.n_plus_1();
  const UnitRoots w(n1);
  const double offset = n1 % 2 == 0 ? -0.5 : -(n1 / 2 + 1.0);
  ComplexVector ev(n1);
  for (int i = 0; i < n1; ++i) ev[i] = w.pow(offset - i - 0.5 * g[i]);
  return ev;
}

MonodromyMatrix gamma_to_m0(const SectionCalibration& cal, const GammaVector& g, Tolerance tol) {
  if (cal.n_plus_1 != g.n_plus_1()) throw DimensionError("calibration and gamma sizes differ");
  const PolyCoeffs p = poly_from_roots(eigenvalues_from_gamma(g));
  const int n1 = g.n_plus_1();
  ComplexVector e(n1 - 1);
  for (int k = 1; k < n1; ++k) e[k - 1] = (k % 2 == 0 ? 1.0 : -1.0) * p[n1 - k];
  const ComplexMatrix m = reconstruct_from_chi(cal, e);
  const RealMatrix real = realify(m, tol.bound(1.0));
  return MonodromyMatrix(n1, real.cast<Complex>(), tol);
}

std::pair<double, double> s_formulas(const GammaVector& g) {
  if (g.n_plus_1() == 4) {
    const double a = std::cos(kPi * (g[0] + 1) / 4);
    const double b = std::cos(kPi * (g[1] + 3) / 4);
    return {-2 * a - 2 * b, -2 - 4 * a * b};
  }
  if (g.n_plus_1() == 5) {
    const double a = std::cos(kPi * (g[0] - 4) / 5);
    const double b = std::cos(kPi * (g[1] - 2) / 5);
    return {1 + 2 * a + 2 * b, -2 - 2 * a - 2 * b - 4 * a * b};
  }
  throw DomainError("closed-form s values exist only for n+1 = 4 and 5");
}

std::pair<double, double> s_from_char_poly(int n_plus_1, const PolyCoeffs& p) {
  if (n_plus_1 == 4 && p.degree() == 4) return {p[3].real(), -p[2].real()};
  if (n_plus_1 == 5 && p.degree() == 5) return {-p[4].real(), -p[3].real()};
  throw DomainError("closed-form s values exist only for n+1 = 4 and 5");
}

AlcovePoint::AlcovePoint(int n_plus_1, RealVector rho, double tol) : n1_(require_rank(n_plus_1)), rho_(std::move(rho)) {
  if (rho_.size() != n1_) throw DimensionError("alcove point needs " + std::to_string(n1_) + " entries");
  if (std::abs(rho_.sum()) > tol) throw ConstraintError("alcove coordinates do not sum to zero");
}

bool AlcovePoint::in_alcove(double tol) const {
  std::vector<int> chain;
  if (n1_ % 2 == 0) {
    const int m = n1_ / 2;
    for (int i = m; i < n1_; ++i) chain.push_back(i);
    for (int i = 0; i < m; ++i) chain.push_back(i);
  } else {
    for (int i = 0; i < n1_; ++i) chain.push_back(i);
  }
  for (size_t p = 0; p + 1 < chain.size(); ++p)
    if (rho_[chain[p]] > rho_[chain[p + 1]] + tol) return false;
  return rho_[chain.back()] <= 2.0 + rho_[chain.front()] + tol;
}

bool AlcovePoint::p_fixed(double tol) const {
  for (int i = 0; i < n1_; ++i)
    if (std::abs(rho_[i] + rho_[n1_ - 1 - i]) > tol) return false;
  return true;
}

RealVector alcove_shift(int n_plus_1) {
  RealVector s(n_plus_1);
  const int m = n_plus_1 / 2;
  for (int i = 0; i < n_plus_1; ++i) {
    if (n_plus_1 % 2 == 0) s[i] = i < m ? 2 * i + 1 : 2 * i + 1 - 2 * n_plus_1;
    else s[i] = 2 * i - 2 * m;
  }
  return s;
}

AlcovePoint alcove_coords(const GammaVector& g) {
  const int n1 = g.n_plus_1();
  return AlcovePoint(n1, (g.values() + alcove_shift(n1)) / n1);
}

GammaVector alcove_to_gamma(const AlcovePoint& p) {
  if (!p.p_fixed(1e-12)) throw ConstraintError("alcove point is not fixed by the involution");
  const int n1 = p.n_plus_1();
  return GammaVector(n1, n1 * p.values() - alcove_shift(n1));
}

void AsymptoticDataK::validate() const {
  require_rank(n_plus_1);
  if (k.size() != n_plus_1) throw DimensionError("k needs " + std::to_string(n_plus_1) + " entries");
  if (c.size() != 0 && c.size() != n_plus_1) throw DimensionError("c needs " + std::to_string(n_plus_1) + " entries");
  for (int i = 0; i < n_plus_1; ++i) {
    if (!(k[i] >= -1.0)) throw ConstraintError("k_" + std::to_string(i) + " is below -1");
    if (c.size() && !(c[i] > 0.0)) throw ConstraintError("c_" + std::to_string(i) + " is not positive");
  }
  if (!(N() > 0.0)) throw ConstraintError("N must be positive");
  for (int i = 0; i < n_plus_1; ++i)
    if (std::abs(k[i] - k[(n_plus_1 - i) % n_plus_1]) > 1e-12)
      throw ConstraintError("k is not symmetric under i -> n+1-i");
}

RealVector m_from_k(int n_plus_1, const RealVector& k) {
  AsymptoticDataK a{n_plus_1, k, {}};
  a.validate();
  const double big_n = a.N();
  RealVector m(n_plus_1);
  m[0] = 0.0;
  for (int i = 1; i < n_plus_1; ++i) m[i] = m[i - 1] + 1.0 - n_plus_1 * (k[i] + 1.0) / big_n;
  m.array() -= 0.5 * (m[0] + m[n_plus_1 - 1]);
  for (int i = 0; i < n_plus_1; ++i)
    if (std::abs(m[i] + m[n_plus_1 - 1 - i]) > 1e-12)
      throw ConstraintError("recurrence is inconsistent with anti-symmetry");
  return m;
}

GammaVector gamma_from_k(const AsymptoticDataK& a) {
  a.validate();
  return GammaVector(a.n_plus_1, -2.0 * m_from_k(a.n_plus_1, a.k));
}

GammaVector sample_polytope(int n_plus_1, Sampler& rng) {
  require_rank(n_plus_1);
  const int m = n_plus_1 / 2;
  const bool even = n_plus_1 % 2 == 0;
  std::vector<double> u(static_cast<size_t>(m));
  for (double& x : u) x = even ? rng.uniform(0.0, 1.0) : rng.uniform(-1.0, 0.0);
  std::sort(u.begin(), u.end());
  RealVector rho = RealVector::Zero(n_plus_1);
  for (int i = 0; i < m; ++i) {
    rho[i] = u[static_cast<size_t>(i)];
    rho[n_plus_1 - 1 - i] = -u[static_cast<size_t>(i)];
  }
  return alcove_to_gamma(AlcovePoint(n_plus_1, rho));
}

}  // namespace ttstokes
