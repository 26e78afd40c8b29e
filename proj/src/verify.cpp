#include "ttstokes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "ttstokes/connection.hpp"
#include "ttstokes/random.hpp"
#include "ttstokes/roots.hpp"
#include "ttstokes/solutions.hpp"
#include "ttstokes/steinberg.hpp"
#include "ttstokes/stokes.hpp"

namespace ttstokes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  double residual = 0.0;
  double threshold = 0.0;
  std::string message;
};

double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs_diff(a, b) / std::max(1.0, b.cwiseAbs().maxCoeff());
}

double poly_diff(const PolyCoeffs& a, const PolyCoeffs& b) {
  return max_abs_diff(a.coeffs(), b.coeffs()) / std::max(1.0, b.coeffs().cwiseAbs().maxCoeff());
}

// Mismatch counts become an infinite residual so no tolerance can pass them.
double count_residual(int mismatches) { return mismatches == 0 ? 0.0 : kInf; }

ComplexMatrix conditioned_matrix(int n, Sampler& rng) {
  RealVector s(n);
  for (int k = 0; k < n; ++k) s[k] = std::pow(10.0, 2.5 * k / std::max(1, n - 1));
  return rng.unitary(n) * s.cast<Complex>().asDiagonal() * rng.unitary(n);
}

Outcome suite_charpoly(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-8, ""};
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix m = rng.complex_matrix(n1);
    o.residual = std::max(o.residual, poly_diff(poly_from_roots(eigenvalues(m)), char_poly(m)));
  }
  return o;
}

Outcome suite_similarity(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-8, ""};
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix m = rng.complex_matrix(n1);
    const ComplexMatrix p = conditioned_matrix(n1, rng);
    o.residual = std::max(o.residual, poly_diff(char_poly(ComplexMatrix(p * m * p.inverse())), char_poly(m)));
  }
  return o;
}

Outcome suite_determinant(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-10, ""};
  for (int s = 0; s < samples; ++s) {
    const ComplexMatrix m = rng.complex_matrix(n1);
    const Complex det = m.determinant();
    const Complex c0 = (n1 % 2 == 0 ? 1.0 : -1.0) * char_poly(m)[0];
    o.residual = std::max(o.residual, std::abs(det - c0) / std::max(1.0, std::abs(det)));
  }
  return o;
}

Outcome suite_roots(int n1, int, Sampler&) {
  int bad = 0;
  const int labels = 2 * n1;
  for (int ell = 0; ell < labels; ++ell) {
    const std::vector<Root> r = supported_roots(n1, ell);
    if (r.empty()) ++bad;
    std::vector<Root> neg;
    for (const Root& x : r) neg.push_back(x.negated());
    std::sort(neg.begin(), neg.end());
    if (supported_roots(n1, ell + n1) != neg) ++bad;
  }
  const std::pair<int, TableRow> tabled[] = {{0, TableRow::Head}, {1, TableRow::Second}, {n1 - 1, TableRow::Tail}};
  for (const auto& [ell, row] : tabled) {
    std::vector<Root> t = table_supported_roots(n1, row);
    std::sort(t.begin(), t.end());
    if (t != supported_roots(n1, ell)) ++bad;
  }
  return {count_residual(bad), 0.0, bad ? std::to_string(bad) + " mismatched root sets" : ""};
}

Outcome suite_positive(int n1, int, Sampler&) {
  int bad = 0;
  std::string msg;
  const std::vector<Root> pos = half_period_roots(n1);
  if (static_cast<int>(pos.size()) != n1 * (n1 - 1) / 2 || !is_positive_system(pos, n1)) {
    ++bad;
    msg = "half period is not a positive system";
  }
  std::vector<Root> simple = table_supported_roots(n1, TableRow::Head);
  const std::vector<Root> tail = table_supported_roots(n1, TableRow::Tail);
  simple.insert(simple.end(), tail.begin(), tail.end());
  if (static_cast<int>(simple.size()) != n1 - 1) ++bad;
  const SimpleSystemCertificate cert = simple_system_check(simple, pos);
  if (!cert.ok()) {
    ++bad;
    msg = cert.message;
  }
  std::sort(simple.begin(), simple.end());
  if (order_diagram(n1).simple_roots() != simple) {
    ++bad;
    msg = "order diagram disagrees with the tables";
  }
  for (TableRow row : {TableRow::Head, TableRow::Second}) {
    const std::vector<Root> rs = table_supported_roots(n1, row);
    for (const Root& a : rs)
      for (const Root& b : rs) {
        const std::set<int> sa{a.i, a.j}, sb{b.i, b.j};
        const bool same = sa == sb;
        const bool disjoint = !sa.count(b.i) && !sa.count(b.j);
        if (!same && !disjoint) ++bad;
      }
  }
  return {count_residual(bad), 0.0, msg};
}

Outcome suite_patterns(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-12, ""};
  int bad = 0;
  for (int ell = 0; ell < 2 * n1; ++ell)
    if (q_pattern(n1, ell) != supported_pattern(n1, ell)) ++bad;
  for (int s = 0; s < samples; ++s)
    for (TableRow row : {TableRow::Head, TableRow::Second}) {
      std::vector<std::pair<Root, Complex>> f;
      RootCoeffs coeffs;
      for (const Root& r : table_supported_roots(n1, row)) {
        f.emplace_back(r, rng.complex_normal());
        coeffs[r] = f.back().second;
      }
      const ComplexMatrix fwd = unipotent_product(n1, f);
      std::reverse(f.begin(), f.end());
      o.residual = std::max({o.residual, rel_diff(unipotent_product(n1, f), fwd), rel_diff(build_q(n1, row, coeffs), fwd)});
    }
  if (bad) {
    o.residual = kInf;
    o.message = std::to_string(bad) + " pattern mismatches";
  }
  return o;
}

Outcome suite_qfamily(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-9, ""};
  const size_t free = symmetric_free_roots(n1).size();
  for (int s = 0; s < samples; ++s) {
    for (bool real : {false, true}) {
      std::vector<Complex> v(free);
      for (Complex& x : v) x = real ? Complex(rng.normal()) : rng.complex_normal();
      const StokesParams p = StokesParams::symmetric(n1, v);
      try {
        const QFamily fam = q_family(n1, build_q(n1, TableRow::Head, p.head()), build_q(n1, TableRow::Second, p.second()),
                                     Tolerance::uniform(1.0));
        for (const auto& [name, r] : fam.residuals) o.residual = std::max(o.residual, r);
        if (real) o.residual = std::max(o.residual, reality_residual(fam));
      } catch (const ConsistencyError& e) {
        o.residual = kInf;
        o.message = e.what();
      }
    }
  }
  return o;
}

Outcome suite_monodromy(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-8, ""};
  const Complex half = UnitRoots(n1).half_pow(1);
  for (int s = 0; s < samples; ++s) {
    RootCoeffs hc, sc;
    for (const Root& r : table_supported_roots(n1, TableRow::Head)) hc[r] = rng.complex_normal();
    for (const Root& r : table_supported_roots(n1, TableRow::Second)) sc[r] = rng.complex_normal();
    const MonodromyMatrix m0 = build_m0(StokesParams(n1, hc, sc));
    o.residual = std::max(o.residual, std::abs(m0.matrix().determinant() - 1.0));
    const ComplexMatrix base = n1 % 2 == 0 ? ComplexMatrix(half * m0.matrix()) : m0.matrix();
    ComplexVector lam = eigenvalues(base);
    for (Eigen::Index k = 0; k < lam.size(); ++k) lam[k] = std::pow(lam[k], n1);
    const ComplexMatrix full = full_monodromy(m0);
    const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    o.residual = std::max(o.residual, match_multisets(eigenvalues(full), lam, kInf).max_distance / scale);
  }
  return o;
}

Outcome suite_section(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-8, ""};
  const SectionCalibration cal = calibrate(n1, rng.engine()());
  const SectionReport rep = section_check(cal, samples, rng.engine()());
  o.residual = std::max({cal.linearity_residual, rep.max_forward_residual, rep.max_converse_residual});
  if (rep.regular_pass != rep.samples) o.residual = kInf;
  if (!rep.passed()) o.message = rep.offending.value_or("");
  const RealMatrix prod = [&] {
    RealMatrix p = RealMatrix::Identity(n1, n1);
    for (const WeylRep& w : cal.reps) p = p * w.matrix;
    return p;
  }();
  if (max_abs_diff(prod, twisted_cyclic(n1)) != 0.0) {
    o.residual = kInf;
    o.message = "Weyl product is not the cyclic matrix";
  }
  for (int s = 0; s < samples; ++s) {
    const ComplexVector t = rng.real_vector(n1 - 1).cast<Complex>();
    const ComplexMatrix m = steinberg_section(cal, t);
    o.residual = std::max(o.residual, m.imag().cwiseAbs().maxCoeff());
    const ComplexMatrix back = reconstruct_from_chi(cal, chi(m));
    o.residual = std::max(o.residual, back.imag().cwiseAbs().maxCoeff());
  }
  return o;
}

Outcome suite_weylrep(int n1, int, Sampler&) {
  int bad = 0;
  for (const Root& r : all_roots(n1))
    for (SignSlot slot : {SignSlot::Lower, SignSlot::Upper}) {
      const RealMatrix s = WeylRep::make(n1, r, slot).matrix;
      if (std::abs(s.determinant() - 1.0) > 1e-12) ++bad;
      const auto p = [&](int k) { return k == r.i ? r.j : k == r.j ? r.i : k; };
      for (const Root& e : all_roots(n1)) {
        const RealMatrix c = s * matrix_unit(n1, e.i, e.j) * s.transpose();
        const RealMatrix target = matrix_unit(n1, p(e.i), p(e.j));
        if (max_abs_diff(c, target) != 0.0 && max_abs_diff(c, RealMatrix(-target)) != 0.0) ++bad;
      }
    }
  return {count_residual(bad), 0.0, bad ? "conjugation fails on " + std::to_string(bad) + " units" : ""};
}

Outcome suite_eigen(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-8, ""};
  const SectionCalibration cal = calibrate(n1, rng.engine()());
  for (int s = 0; s < samples; ++s) {
    const GammaVector g = sample_polytope(n1, rng);
    const ComplexVector expected = eigenvalues_from_gamma(g);
    const MonodromyMatrix m0 = gamma_to_m0(cal, g);
    const ComplexVector ev = eigenvalues(m0.matrix());
    o.residual = std::max(o.residual, match_multisets(ev, expected, kInf).max_distance);
    for (Eigen::Index k = 0; k < ev.size(); ++k) o.residual = std::max(o.residual, std::abs(std::abs(ev[k]) - 1.0));
    o.residual = std::max(o.residual, match_multisets(formal_monodromy_eigenvalues(g), expected, kInf).max_distance);
    const PolyCoeffs p = char_poly(m0.matrix());
    const double sign = n1 % 2 == 0 ? 1.0 : -1.0;
    for (int j = 0; j <= n1; ++j) o.residual = std::max(o.residual, std::abs(p[j] - sign * p[n1 - j]));
  }
  return o;
}

Outcome suite_alcove(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-12, ""};
  int bad = 0;
  for (int s = 0; s < samples; ++s) {
    const GammaVector g = sample_polytope(n1, rng);
    const AlcovePoint a = alcove_coords(g);
    o.residual = std::max(o.residual, (alcove_to_gamma(a).values() - g.values()).cwiseAbs().maxCoeff());
    if (!a.in_p_subset()) ++bad;

    std::vector<double> free(static_cast<size_t>(n1 / 2));
    for (double& x : free) x = rng.uniform(-n1, n1);
    const GammaVector h = GammaVector::from_free(n1, free);
    if (polytope_contains(h) != alcove_coords(h).in_p_subset()) ++bad;
    const AlcovePoint b = alcove_coords(h);
    o.residual = std::max(o.residual, (alcove_coords(alcove_to_gamma(b)).values() - b.values()).cwiseAbs().maxCoeff());
  }
  if (bad) {
    o.residual = kInf;
    o.message = std::to_string(bad) + " membership disagreements";
  }
  return o;
}

AsymptoticDataK random_symmetric_k(int n1, Sampler& rng) {
  RealVector k(n1);
  for (int i = 0; i <= n1 / 2; ++i) {
    const double v = rng.uniform(-1.0, 3.0);
    k[i] = v;
    k[(n1 - i) % n1] = v;
  }
  RealVector c(n1);
  for (int i = 0; i <= n1 / 2; ++i) c[i] = c[(n1 - i) % n1] = rng.uniform(0.5, 2.0);
  return {n1, k, c};
}

Outcome suite_appendix(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-12, ""};
  int bad = 0;
  for (int s = 0; s < samples; ++s) {
    const AsymptoticDataK a = random_symmetric_k(n1, rng);
    const GammaVector g = gamma_from_k(a);
    if (!polytope_contains(g)) ++bad;
    for (int i = 0; i < n1; ++i) {
      const double lhs = n1 * (a.k[i] + 1.0) / a.N();
      const double rhs = 1.0 + (g[i] - g[(i + n1 - 1) % n1]) / 2.0;
      o.residual = std::max(o.residual, std::abs(lhs - rhs));
    }
  }
  if (bad) {
    o.residual = kInf;
    o.message = std::to_string(bad) + " k vectors left the polytope";
  }
  return o;
}

TodaField random_field(int n1, Sampler& rng) {
  RealVector w(n1), xwx(n1);
  for (int i = 0; i < n1; ++i) {
    if (i < n1 - 1 - i) {
      w[i] = rng.uniform(-1.0, 1.0);
      xwx[i] = rng.uniform(-2.0, 2.0);
      w[n1 - 1 - i] = -w[i];
      xwx[n1 - 1 - i] = -xwx[i];
    } else if (i == n1 - 1 - i) {
      w[i] = xwx[i] = 0.0;
    }
  }
  return TodaField::make(n1, w, std::exp(rng.uniform(-1.0, 1.0)), xwx);
}

Outcome suite_symmetry(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-10, ""};
  for (int s = 0; s < samples; ++s) {
    const TodaField f = random_field(n1, rng);
    o.residual = std::max(o.residual, symmetry_report(f, 4, rng.engine()()).max());
    o.residual = std::max(o.residual, diagonalizer_check(f).max());
    const AsymptoticDataK a = random_symmetric_k(n1, rng);
    const OmegaHatData d = OmegaHatData::make(n1, a.c, a.k, std::polar(std::exp(rng.uniform(-1.0, 1.0)), rng.uniform(-3.0, 3.0)));
    o.residual = std::max(o.residual, omega_hat_symmetry(d, 4, rng.engine()()).max());
  }
  return o;
}

Outcome suite_toda(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-12, ""};
  for (int s = 0; s < samples; ++s) {
    const TodaField f = random_field(n1, rng);
    const RealVector rhs = toda_rhs(f);
    const RealVector& w = f.w();
    for (int i = 0; i < n1; ++i) {
      const double explicit_value = std::exp(2 * (w[i] - w[(i + n1 - 1) % n1])) - std::exp(2 * (w[(i + 1) % n1] - w[i]));
      o.residual = std::max(o.residual, std::abs(rhs[i] - explicit_value));
    }
    o.residual = std::max(o.residual, std::abs(rhs.sum()));
    const ComplexMatrix wm = build_W(f);
    ComplexMatrix comm = wm.transpose() * wm - wm * wm.transpose();
    comm.diagonal().setZero();
    o.residual = std::max(o.residual, comm.cwiseAbs().maxCoeff());
  }
  return o;
}

Outcome suite_unitary(int n1, int samples, Sampler& rng) {
  const ConjugacyReport rep = unitary_conjugacy_check(n1, samples, rng.engine()());
  Outcome o{std::max({rep.max_spectral_mismatch, rep.max_unitarity_defect, rep.max_conjugator_residual}), 1e-8, ""};
  if (rep.min_nonunitarity < 1e-3) {
    o.residual = kInf;
    o.message = "conjugating element was unitary; test is vacuous";
  }
  return o;
}

Outcome suite_sformulas(int n1, int samples, Sampler& rng) {
  Outcome o{0.0, 1e-10, ""};
  const SectionCalibration cal = calibrate(n1, rng.engine()());
  for (int s = 0; s < samples; ++s) {
    const GammaVector g = sample_polytope(n1, rng);
    const auto [s1, s2] = s_formulas(g);
    const auto [c1, c2] = s_from_char_poly(n1, char_poly(gamma_to_m0(cal, g).matrix()));
    o.residual = std::max({o.residual, std::abs(s1 - c1), std::abs(s2 - c2)});
  }
  return o;
}

using SuiteFn = std::function<Outcome(int, int, Sampler&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r = {
      {"alcove", suite_alcove},         {"appendix", suite_appendix},     {"charpoly", suite_charpoly},
      {"determinant", suite_determinant}, {"eigen", suite_eigen},         {"unitary", suite_unitary},
      {"monodromy", suite_monodromy},   {"patterns", suite_patterns},     {"positive", suite_positive},
      {"qfamily", suite_qfamily},       {"roots", suite_roots},           {"sformulas", suite_sformulas},
      {"similarity", suite_similarity}, {"symmetry", suite_symmetry},     {"section", suite_section},
      {"toda", suite_toda},             {"weylrep", suite_weylrep},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

bool suite_applies(const std::string& suite, int n_plus_1) {
  if (suite == "sformulas") return n_plus_1 == 4 || n_plus_1 == 5;
  return registry().count(suite) > 0;
}

SuiteResult run_suite(const std::string& suite, int n_plus_1, int samples, std::uint64_t seed, std::optional<double> tol) {
  const auto it = registry().find(suite);
  if (it == registry().end()) throw DomainError("unknown suite " + suite);
  // distinct deterministic stream per (suite, n)
  std::uint64_t mixed = seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n_plus_1) * 1000003ULL;
  for (char ch : suite) mixed = mixed * 131 + static_cast<unsigned char>(ch);
  Sampler rng(mixed);

  SuiteResult r;
  r.suite = suite;
  r.n_plus_1 = n_plus_1;
  r.samples = samples;
  try {
    const Outcome o = it->second(n_plus_1, samples, rng);
    r.max_residual = o.residual;
    r.threshold = tol.value_or(o.threshold);
    r.message = o.message;
    r.passed = std::isfinite(r.max_residual) && r.max_residual <= r.threshold;
  } catch (const std::exception& e) {
    r.max_residual = kInf;
    r.threshold = tol.value_or(0.0);
    r.message = e.what();
    r.passed = false;
  }
  return r;
}

std::vector<SuiteResult> run_suites(const VerifyOptions& opts) {
  std::vector<std::string> names = opts.suites.empty() ? suite_names() : opts.suites;
  std::sort(names.begin(), names.end());
  std::vector<SuiteResult> out;
  for (const std::string& name : names) {
    if (!registry().count(name)) throw DomainError("unknown suite " + name);
    for (int n1 = opts.n_min; n1 <= opts.n_max; ++n1)
      if (suite_applies(name, n1)) out.push_back(run_suite(name, n1, opts.samples, opts.seed, opts.tol));
  }
  return out;
}

}  // namespace ttstokes
