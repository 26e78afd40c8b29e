#include "ttstokes/steinberg.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

#include "ttstokes/random.hpp"
#include "ttstokes/stokes.hpp"

namespace ttstokes {

WeylRep WeylRep::make(int n_plus_1, Root root, SignSlot slot) {
  if (root.i == root.j || root.i < 0 || root.j < 0 || root.i >= n_plus_1 || root.j >= n_plus_1)
    throw DomainError("invalid root " + to_string(root));
  RealMatrix s = RealMatrix::Identity(n_plus_1, n_plus_1);
  const int lo = std::min(root.i, root.j);
  const int hi = std::max(root.i, root.j);
  s(lo, lo) = s(hi, hi) = 0.0;
  s(hi, lo) = slot == SignSlot::Lower ? -1.0 : 1.0;
  s(lo, hi) = slot == SignSlot::Lower ? 1.0 : -1.0;
  return {root, slot, s};
}

ComplexVector SectionCalibration::chi_of_params(const ComplexVector& t) const {
  ComplexVector e(static_cast<Eigen::Index>(chi_permutation.size()));
  for (size_t k = 0; k < chi_permutation.size(); ++k)
    e[static_cast<Eigen::Index>(k)] = static_cast<double>(chi_permutation[k].sign) * t[chi_permutation[k].index];
  return e;
}

ComplexVector SectionCalibration::params_of_chi(const ComplexVector& e) const {
  if (e.size() != static_cast<Eigen::Index>(chi_permutation.size()))
    throw DimensionError("expected " + std::to_string(chi_permutation.size()) + " character values");
  ComplexVector t(e.size());
  for (size_t k = 0; k < chi_permutation.size(); ++k)
    t[chi_permutation[k].index] = static_cast<double>(chi_permutation[k].sign) * e[static_cast<Eigen::Index>(k)];
  return t;
}

ComplexMatrix steinberg_product(int n_plus_1, std::span<const Root> roots, std::span<const RealMatrix> sigmas,
                                const ComplexVector& t) {
  if (roots.size() != sigmas.size() || static_cast<Eigen::Index>(roots.size()) != t.size())
    throw DimensionError("section needs one parameter and one Weyl representative per root");
  ComplexMatrix acc = ComplexMatrix::Identity(n_plus_1, n_plus_1);
  for (size_t k = 0; k < roots.size(); ++k) {
    ComplexMatrix e = ComplexMatrix::Identity(n_plus_1, n_plus_1);
    e(roots[k].i, roots[k].j) = t[static_cast<Eigen::Index>(k)];
    acc = acc * e * sigmas[k].cast<Complex>();
  }
  return acc;
}

ComplexMatrix steinberg_section(const SectionCalibration& cal, const ComplexVector& t) {
  if (t.size() != cal.n_plus_1 - 1) throw DimensionError("section needs n parameters");
  std::vector<RealMatrix> sigmas;
  for (const WeylRep& w : cal.reps) sigmas.push_back(w.matrix);
  return steinberg_product(cal.n_plus_1, cal.root_order, sigmas, t);
}

ComplexVector chi(const ComplexMatrix& m, Tolerance tol, std::vector<std::string>* warnings) {
  const PolyCoeffs p = char_poly(m);
  const Eigen::Index n1 = m.rows();
  ComplexVector e(n1 - 1);
  for (Eigen::Index k = 1; k < n1; ++k) e[k - 1] = (k % 2 == 0 ? 1.0 : -1.0) * p[n1 - k];
  const Complex det = (n1 % 2 == 0 ? 1.0 : -1.0) * p[0];
  if (std::abs(det - 1.0) > tol.bound(1.0) && warnings)
    warnings->push_back("determinant differs from 1 by " + std::to_string(std::abs(det - 1.0)));
  return e;
}

ComplexMatrix reconstruct_from_chi(const SectionCalibration& cal, const ComplexVector& e) {
  return steinberg_section(cal, cal.params_of_chi(e));
}

namespace {

// Sign flips on the sigmas move to a diagonal factor at the right; solve for them over GF(2).
std::vector<SignSlot> solve_signs(int n1, const std::vector<Root>& order) {
  const size_t n = order.size();
  std::vector<RealMatrix> sig;
  for (const Root& r : order) sig.push_back(WeylRep::make(n1, r, SignSlot::Lower).matrix);
  RealMatrix prod = RealMatrix::Identity(n1, n1);
  for (const RealMatrix& s : sig) prod = prod * s;
  const RealMatrix target = twisted_cyclic(n1);
  if (max_abs_diff(prod.cwiseAbs(), target.cwiseAbs()) > 0.5)
    throw CalibrationError("Weyl representatives do not multiply to the cyclic permutation");
  const RealMatrix d = prod.transpose() * target;

  // rows: diagonal positions; columns: sigma flips; last column: required -1 pattern
  std::vector<std::vector<int>> sys(static_cast<size_t>(n1), std::vector<int>(n + 1, 0));
  for (int pos = 0; pos < n1; ++pos) sys[pos][n] = d(pos, pos) < 0 ? 1 : 0;
  for (size_t k = 0; k < n; ++k) {
    RealMatrix after = RealMatrix::Identity(n1, n1);
    for (size_t l = k + 1; l < n; ++l) after = after * sig[l];
    RealVector flip = RealVector::Ones(n1);
    flip[order[k].i] = flip[order[k].j] = -1.0;
    const RealMatrix dk = after.transpose() * flip.asDiagonal() * after;
    for (int pos = 0; pos < n1; ++pos) sys[pos][k] = dk(pos, pos) < 0 ? 1 : 0;
  }

  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < n && row < sys.size(); ++col) {
    size_t p = row;
    while (p < sys.size() && !sys[p][col]) ++p;
    if (p == sys.size()) continue;
    std::swap(sys[p], sys[row]);
    for (size_t r = 0; r < sys.size(); ++r)
      if (r != row && sys[r][col])
        for (size_t c = 0; c <= n; ++c) sys[r][c] ^= sys[row][c];
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  for (size_t r = row; r < sys.size(); ++r)
    if (sys[r][n]) throw CalibrationError("no sign pattern gives the cyclic permutation");

  std::vector<SignSlot> slots(n, SignSlot::Lower);
  for (size_t r = 0; r < pivot_col.size(); ++r)
    if (sys[r][n]) slots[static_cast<size_t>(pivot_col[r])] = SignSlot::Upper;
  return slots;
}

}  // namespace

SectionCalibration calibrate(int n_plus_1, std::uint64_t seed, Tolerance tol) {
  require_rank(n_plus_1);
  SectionCalibration cal;
  cal.n_plus_1 = n_plus_1;
  cal.root_order = table_supported_roots(n_plus_1, TableRow::Head);
  const std::vector<Root> tail = table_supported_roots(n_plus_1, TableRow::Tail);
  cal.root_order.insert(cal.root_order.end(), tail.begin(), tail.end());

  const std::vector<SignSlot> slots = solve_signs(n_plus_1, cal.root_order);
  for (size_t k = 0; k < slots.size(); ++k) cal.reps.push_back(WeylRep::make(n_plus_1, cal.root_order[k], slots[k]));

  RealMatrix prod = RealMatrix::Identity(n_plus_1, n_plus_1);
  for (const WeylRep& w : cal.reps) prod = prod * w.matrix;
  if (max_abs_diff(prod, twisted_cyclic(n_plus_1)) != 0.0)
    throw CalibrationError("product of Weyl representatives is not the cyclic matrix");

  const int n = n_plus_1 - 1;
  const ComplexVector base = chi(steinberg_section(cal, ComplexVector::Zero(n)));
  std::vector<bool> hit(static_cast<size_t>(n), false);
  cal.chi_permutation.assign(static_cast<size_t>(n), {});
  for (int k = 0; k < n; ++k) {
    ComplexVector t = ComplexVector::Zero(n);
    t[k] = 1.0;
    const ComplexVector delta = chi(steinberg_section(cal, t)) - base;
    int found = -1;
    for (int c = 0; c < n; ++c) {
      if (std::abs(delta[c]) < 1e-9) continue;
      if (found >= 0 || std::abs(std::abs(delta[c]) - 1.0) > 1e-9 || std::abs(delta[c].imag()) > 1e-9)
        throw CalibrationError("character map is not a signed permutation of the parameters");
      found = c;
    }
    if (found < 0 || hit[static_cast<size_t>(found)])
      throw CalibrationError("character map is not a bijection on the parameters");
    hit[static_cast<size_t>(found)] = true;
    cal.chi_permutation[static_cast<size_t>(found)] = {k, delta[found].real() > 0 ? 1 : -1};
  }

  Sampler rng(seed);
  for (int s = 0; s < 10; ++s) {
    const ComplexVector t = rng.complex_vector(n);
    const ComplexVector e = chi(steinberg_section(cal, t));
    const double r = (e - base - cal.chi_of_params(t)).cwiseAbs().maxCoeff() / std::max(1.0, t.cwiseAbs().maxCoeff());
    cal.linearity_residual = std::max(cal.linearity_residual, r);
  }
  if (cal.linearity_residual > tol.bound(1.0))
    throw CalibrationError("character map is not linear, residual " + std::to_string(cal.linearity_residual));
  return cal;
}

int commutant_dimension(const ComplexMatrix& m, double threshold) {
  const Eigen::Index n = m.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  // vec(XM - MX) = (M^T kron I - I kron M) vec(X)
  const ComplexMatrix op = Eigen::kroneckerProduct(m.transpose(), id).eval() - Eigen::kroneckerProduct(id, m).eval();
  Eigen::FullPivLU<ComplexMatrix> lu(op);
  lu.setThreshold(threshold);
  return static_cast<int>(n * n - lu.rank());
}

SectionReport section_check(const SectionCalibration& cal, int samples, std::uint64_t seed, Tolerance tol) {
  if (samples < 1) throw DomainError("need at least one sample");
  const int n1 = cal.n_plus_1;
  const int n = n1 - 1;
  Sampler rng(seed);
  SectionReport rep;
  rep.samples = samples;
  const double bound = std::max(tol.abs_tol, 1e-8);
  const std::vector<Root> head = table_supported_roots(n1, TableRow::Head);
  const std::vector<Root> second = table_supported_roots(n1, TableRow::Second);

  for (int s = 0; s < samples; ++s) {
    const ComplexVector t = rng.complex_vector(n);
    const ComplexMatrix m = steinberg_section(cal, t);
    const double fwd = decompose_m0(n1, m).residual / std::max(1.0, m.cwiseAbs().maxCoeff());
    rep.max_forward_residual = std::max(rep.max_forward_residual, fwd);
    if (fwd <= bound) ++rep.forward_pass;
    else if (!rep.offending) rep.offending = "forward sample " + std::to_string(s);

    if (commutant_dimension(m) == n1) ++rep.regular_pass;
    else if (!rep.offending) rep.offending = "regularity sample " + std::to_string(s);

    RootCoeffs hc, sc;
    for (const Root& r : head) hc[r] = rng.complex_normal();
    for (const Root& r : second) sc[r] = rng.complex_normal();
    const ComplexMatrix m0 = build_m0(StokesParams(n1, hc, sc)).matrix();
    const ComplexMatrix back = reconstruct_from_chi(cal, chi(m0));
    const double conv = max_abs_diff(back, m0) / std::max(1.0, m0.cwiseAbs().maxCoeff());
    rep.max_converse_residual = std::max(rep.max_converse_residual, conv);
    if (conv <= bound) ++rep.converse_pass;
    else if (!rep.offending) rep.offending = "converse sample " + std::to_string(s);
  }
  return rep;
}

ConjugacyReport unitary_conjugacy_check(int n_plus_1, int samples, std::uint64_t seed) {
  Sampler rng(seed);
  ConjugacyReport rep;
  rep.samples = samples;
  rep.min_nonunitarity = std::numeric_limits<double>::infinity();
  const Eigen::Index n1 = n_plus_1;
  const ComplexMatrix id = ComplexMatrix::Identity(n1, n1);
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix u = rng.unitary(n1);
    ComplexVector phases(n1);
    // separated phases keep the spectrum simple
    for (Eigen::Index k = 0; k < n1; ++k)
      phases[k] = std::polar(1.0, 2.0 * std::numbers::pi * (k + rng.uniform(0.1, 0.9)) / static_cast<double>(n1));
    const ComplexMatrix k1 = u * phases.asDiagonal() * u.adjoint();

    ComplexVector scale(n1);
    for (Eigen::Index k = 0; k < n1; ++k) scale[k] = std::polar(rng.uniform(0.3, 3.0), rng.uniform(0.0, 6.283));
    const ComplexMatrix centralizing = u * scale.asDiagonal() * u.adjoint();
    const ComplexMatrix g = rng.unitary(n1) * centralizing;
    const ComplexMatrix k2 = g * k1 * g.inverse();

    rep.min_nonunitarity = std::min(rep.min_nonunitarity, max_abs_diff(g * g.adjoint(), id));
    rep.max_unitarity_defect = std::max(rep.max_unitarity_defect, max_abs_diff(k2 * k2.adjoint(), id));

    const ComplexVector ev1 = eigenvalues(k1);
    const ComplexVector ev2 = eigenvalues(k2);
    rep.max_spectral_mismatch = std::max(rep.max_spectral_mismatch, match_multisets(ev1, ev2, 1.0).max_distance);

    // unitary conjugator from Schur bases; both Schur forms are diagonal for normal input
    Eigen::ComplexSchur<ComplexMatrix> s1(k1), s2(k2);
    const ComplexVector d1 = s1.matrixT().diagonal();
    const ComplexVector d2 = s2.matrixT().diagonal();
    ComplexMatrix perm = ComplexMatrix::Zero(n1, n1);
    std::vector<bool> used(static_cast<size_t>(n1), false);
    for (Eigen::Index a = 0; a < n1; ++a) {
      Eigen::Index best = -1;
      for (Eigen::Index b = 0; b < n1; ++b)
        if (!used[static_cast<size_t>(b)] && (best < 0 || std::abs(d2[b] - d1[a]) < std::abs(d2[best] - d1[a])))
          best = b;
      used[static_cast<size_t>(best)] = true;
      perm(best, a) = 1.0;
    }
    const ComplexMatrix h = s2.matrixU() * perm * s1.matrixU().adjoint();
    const double conj_res = std::max(max_abs_diff(h * h.adjoint(), id), max_abs_diff(h * k1 * h.adjoint(), k2));
    rep.max_conjugator_residual = std::max(rep.max_conjugator_residual, conj_res);
  }
  return rep;
}

}  // namespace ttstokes
