#include "ttstokes/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "ttstokes/connection.hpp"
#include "ttstokes/roots.hpp"
#include "ttstokes/solutions.hpp"
#include "ttstokes/steinberg.hpp"
#include "ttstokes/stokes.hpp"
#include "ttstokes/verify.hpp"

#ifndef TTSTOKES_VERSION
#define TTSTOKES_VERSION "0.0.0"
#endif

namespace ttstokes::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "table";
  std::optional<double> tol;
  std::optional<long long> seed;
};

struct Output {
  std::string command;
  int n_plus_1 = 0;
  json payload = json::object();
  json residuals = json::object();
  std::string text;
  int exit_code = kSuccess;
};

std::uint64_t resolve_seed(const Globals& g) {
  if (g.seed) return static_cast<std::uint64_t>(*g.seed);
  if (const char* env = std::getenv("TTSTOKES_SEED")) {
    try {
      size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used == std::string(env).size()) return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("TTSTOKES_SEED must be an integer");
  }
  return 1;
}

int parse_rank(const std::string& s) {
  try {
    size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw UsageError("--n expects an integer, got '" + s + "'");
    if (v < 3) throw UsageError("--n is n+1 and must be at least 3");
    return v;
  } catch (const std::invalid_argument&) {
    throw UsageError("--n expects an integer, got '" + s + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("--n is out of range");
  }
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int v = parse_rank(s);
    return {v, v};
  }
  const int lo = parse_rank(s.substr(0, dots));
  const int hi = parse_rank(s.substr(dots + 2));
  if (hi < lo) throw UsageError("empty range " + s);
  return {lo, hi};
}

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + " expects comma-separated numbers, got '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError(flag + " is empty");
  return out;
}

RealVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json root_json(const Root& r) { return json::array({r.i, r.j}); }

json roots_json(const std::vector<Root>& rs) {
  json out = json::array();
  for (const Root& r : rs) out.push_back(root_json(r));
  return out;
}

std::string roots_text(const std::vector<Root>& rs) {
  std::string s;
  for (const Root& r : rs) s += (s.empty() ? "" : " ") + to_string(r);
  return s;
}

std::string label_text(int ell, int n1) {
  const int whole = 1 + ell / n1;
  const int frac = ell % n1;
  return frac == 0 ? std::to_string(whole) : std::to_string(whole) + " " + std::to_string(frac) + "/" + std::to_string(n1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string s(buf);
  return s == "-0" ? "0" : s;
}

std::string fmt(Complex z) {
  if (std::abs(z.imag()) < 1e-15) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

std::string matrix_text(const ComplexMatrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << std::setw(10) << fmt(m(i, j));
    os << " ]\n";
  }
  return os.str();
}

std::string vector_text(const RealVector& v) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) s += (k ? ", " : "") + fmt(v[k]);
  return s + ")";
}

json real_vector_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

// roots ----------------------------------------------------------------------

Output cmd_roots(int n1) {
  Output o;
  o.command = "roots";
  o.n_plus_1 = n1;
  std::ostringstream text;
  text << "singular directions and supported roots, n+1 = " << n1 << "\n";
  text << std::left << std::setw(6) << "ell" << std::setw(10) << "label" << std::setw(17) << "theta/pi"
       << std::setw(34) << "R(theta)" << std::setw(8) << "table" << "agree\n";

  json dirs = json::array();
  int mismatches = 0;
  for (int ell = 0; ell < n1; ++ell) {
    const SingularDirection d = SingularDirection::make(n1, ell);
    const std::vector<Root> rs = supported_roots(n1, ell);
    json row = {{"ell", ell}, {"label", label_text(ell, n1)}, {"theta", d.theta},
                {"theta_over_pi", d.theta / std::numbers::pi}, {"roots", roots_json(rs)}};
    std::optional<TableRow> tr;
    if (ell == 0) tr = TableRow::Head;
    else if (ell == 1) tr = TableRow::Second;
    else if (ell == n1 - 1) tr = TableRow::Tail;
    std::string agree = "-";
    if (tr) {
      const std::vector<Root> table = table_supported_roots(n1, *tr);
      std::vector<Root> sorted = table;
      std::sort(sorted.begin(), sorted.end());
      const bool ok = sorted == rs;
      if (!ok) ++mismatches;
      row["table_row"] = to_string(*tr);
      row["table_roots"] = roots_json(table);
      row["agree"] = ok;
      agree = ok ? "yes" : "NO";
    } else {
      row["table_row"] = nullptr;
      row["table_roots"] = nullptr;
      row["agree"] = nullptr;
    }
    dirs.push_back(row);
    text << std::setw(6) << ell << std::setw(10) << label_text(ell, n1) << std::setw(14)
         << fmt(d.theta / std::numbers::pi) << std::setw(34) << roots_text(rs) << std::setw(8)
         << (tr ? to_string(*tr) : "-") << agree << "\n";
  }

  const OrderDiagram diag = order_diagram(n1);
  const std::vector<Root> pos = half_period_roots(n1);
  o.payload = {{"directions", dirs},
               {"positive_system", roots_json(pos)},
               {"simple_roots", {{"head", roots_json(table_supported_roots(n1, TableRow::Head))},
                                 {"tail", roots_json(table_supported_roots(n1, TableRow::Tail))}}},
               {"order_diagram", {{"order", diag.order}, {"top", diag.top_row()}, {"bottom", diag.bottom_row()}}}};
  o.residuals = {{"table_mismatches", mismatches}};
  text << "positive system: " << roots_text(pos) << "\n";
  text << "order diagram:   top " << json(diag.top_row()).dump() << "  bottom " << json(diag.bottom_row()).dump() << "\n";
  o.text = text.str();
  o.exit_code = mismatches ? kVerificationFailure : kSuccess;
  return o;
}

Output cmd_directions(int n1) {
  Output o;
  o.command = "directions";
  o.n_plus_1 = n1;
  std::ostringstream text;
  text << "all " << 2 * n1 << " singular directions, n+1 = " << n1 << "\n";
  json dirs = json::array();
  for (int ell = 0; ell < 2 * n1; ++ell) {
    const SingularDirection d = SingularDirection::make(n1, ell);
    const std::vector<Root> rs = supported_roots(n1, ell);
    dirs.push_back({{"ell", ell}, {"label", label_text(ell, n1)}, {"theta", d.theta},
                    {"theta_over_pi", d.theta / std::numbers::pi}, {"roots", roots_json(rs)}});
    text << std::left << std::setw(6) << ell << std::setw(10) << label_text(ell, n1) << std::setw(14)
         << fmt(d.theta / std::numbers::pi) << roots_text(rs) << "\n";
  }
  o.payload = {{"directions", dirs}};
  o.text = text.str();
  return o;
}

// from-gamma / alcove ----------------------------------------------------------

GammaVector read_gamma(int n1, const std::string& gamma, const std::string& gamma_free) {
  if (!gamma.empty() && !gamma_free.empty()) throw UsageError("give --gamma or --gamma-free, not both");
  if (!gamma.empty()) {
    const std::vector<double> v = parse_list(gamma, "--gamma");
    if (static_cast<int>(v.size()) != n1) throw UsageError("--gamma needs n+1 = " + std::to_string(n1) + " values");
    try {
      return GammaVector(n1, to_vector(v), 1e-9);
    } catch (const ConstraintError& e) {
      throw UsageError(e.what());
    }
  }
  if (!gamma_free.empty()) {
    const std::vector<double> v = parse_list(gamma_free, "--gamma-free");
    if (static_cast<int>(v.size()) != n1 / 2) throw UsageError("--gamma-free needs " + std::to_string(n1 / 2) + " values");
    return GammaVector::from_free(n1, v);
  }
  throw UsageError("--gamma or --gamma-free is required");
}

Output cmd_from_gamma(int n1, const GammaVector& g, const Globals& globals) {
  Output o;
  o.command = "from-gamma";
  o.n_plus_1 = n1;
  std::vector<std::string> warnings;
  const ComplexVector ev = eigenvalues_from_gamma(g, &warnings);
  const SectionCalibration cal = calibrate(n1, resolve_seed(globals));

  const PolyCoeffs target = poly_from_roots(ev);
  ComplexVector e(n1 - 1);
  for (int k = 1; k < n1; ++k) e[k - 1] = (k % 2 == 0 ? 1.0 : -1.0) * target[n1 - k];
  const ComplexMatrix raw = reconstruct_from_chi(cal, e);
  const double reality = raw.imag().cwiseAbs().maxCoeff();

  const Tolerance tol = globals.tol ? Tolerance::uniform(*globals.tol) : Tolerance{};
  const MonodromyMatrix m0 = gamma_to_m0(cal, g, tol);
  const RealMatrix real = m0.matrix().real();
  const PolyCoeffs p = char_poly(m0.matrix());
  const ComplexVector qr = eigenvalues(m0.matrix());
  const AlcovePoint rho = alcove_coords(g);

  json poly = json::array();
  for (Eigen::Index k = 0; k <= p.degree(); ++k) poly.push_back(p[k].real());
  o.payload = {{"gamma", real_vector_json(g.values())},
               {"in_polytope", polytope_contains(g)},
               {"eigenvalues", complex_vector_json(ev)},
               {"char_poly", poly},
               {"alcove", real_vector_json(rho.values())},
               {"in_alcove_subset", rho.in_p_subset()},
               {"m0", real_matrix_json(real)},
               {"warnings", warnings}};
  if (n1 == 4 || n1 == 5) {
    const auto [s1, s2] = s_formulas(g);
    o.payload["s"] = {{"s1", s1}, {"s2", s2}};
  }
  o.residuals = {{"reality", reality},
                 {"eigenvalue_match", match_multisets(qr, ev, 1.0).max_distance},
                 {"determinant", std::abs(m0.matrix().determinant() - 1.0)}};

  std::ostringstream text;
  text << "gamma            " << vector_text(g.values()) << (polytope_contains(g) ? "  (in polytope)" : "  (OUTSIDE polytope)") << "\n";
  text << "eigenvalues     ";
  for (Eigen::Index k = 0; k < ev.size(); ++k) text << " " << fmt(ev[k]);
  text << "\nchar poly (asc)  " << vector_text(p.coeffs().real()) << "\n";
  text << "alcove point     " << vector_text(rho.values()) << "\n";
  if (o.payload.contains("s")) text << "s1, s2           " << fmt(o.payload["s"]["s1"].get<double>()) << ", " << fmt(o.payload["s"]["s2"].get<double>()) << "\n";
  text << "M0 =\n" << matrix_text(m0.matrix());
  for (const std::string& w : warnings) text << "warning: " << w << "\n";
  o.text = text.str();
  return o;
}

Output cmd_alcove(int n1, const std::string& gamma, const std::string& gamma_free, const std::string& rho_s) {
  Output o;
  o.command = "alcove";
  o.n_plus_1 = n1;
  std::optional<GammaVector> g;
  std::optional<AlcovePoint> rho;
  if (!rho_s.empty()) {
    if (!gamma.empty() || !gamma_free.empty()) throw UsageError("give either gamma or --rho");
    const std::vector<double> v = parse_list(rho_s, "--rho");
    if (static_cast<int>(v.size()) != n1) throw UsageError("--rho needs n+1 values");
    try {
      rho.emplace(n1, to_vector(v), 1e-9);
      g.emplace(alcove_to_gamma(AlcovePoint(n1, to_vector(v), 1e-9)));
    } catch (const ConstraintError& e) {
      throw UsageError(e.what());
    }
  } else {
    g.emplace(read_gamma(n1, gamma, gamma_free));
    rho.emplace(alcove_coords(*g));
  }
  const double round_trip = (alcove_coords(*g).values() - rho->values()).cwiseAbs().maxCoeff();
  o.payload = {{"gamma", real_vector_json(g->values())},
               {"rho", real_vector_json(rho->values())},
               {"in_polytope", polytope_contains(*g)},
               {"in_alcove", rho->in_alcove()},
               {"p_fixed", rho->p_fixed()}};
  o.residuals = {{"round_trip", round_trip}};
  o.text = "gamma  " + vector_text(g->values()) + "\nrho    " + vector_text(rho->values()) + "\nin polytope: " +
           (polytope_contains(*g) ? "yes" : "no") + ", in alcove: " + (rho->in_alcove() ? "yes" : "no") + "\n";
  return o;
}

// steinberg ---------------------------------------------------------------------

Output cmd_steinberg(int n1, const std::string& t_s, const Globals& globals) {
  Output o;
  o.command = "steinberg";
  o.n_plus_1 = n1;
  const SectionCalibration cal = calibrate(n1, resolve_seed(globals));
  json sigmas = json::array();
  json slots = json::array();
  RealMatrix prod = RealMatrix::Identity(n1, n1);
  for (const WeylRep& w : cal.reps) {
    sigmas.push_back(real_matrix_json(w.matrix));
    slots.push_back(w.sign_slot == SignSlot::Lower ? "lower" : "upper");
    prod = prod * w.matrix;
  }
  json perm = json::array();
  for (const SignedIndex& s : cal.chi_permutation) perm.push_back({{"index", s.index}, {"sign", s.sign}});
  const bool cyclic = max_abs_diff(prod, twisted_cyclic(n1)) == 0.0;
  o.payload = {{"root_order", roots_json(cal.root_order)},
               {"sign_slots", slots},
               {"sigmas", sigmas},
               {"chi_permutation", perm},
               {"sigma_product", real_matrix_json(prod)},
               {"sigma_product_is_cyclic", cyclic}};
  o.residuals = {{"linearity", cal.linearity_residual}};

  std::ostringstream text;
  text << "root order: " << roots_text(cal.root_order) << "\n";
  text << "sign slots:";
  for (const auto& s : slots) text << " " << s.get<std::string>();
  text << "\nchi(s(t)):";
  for (size_t k = 0; k < cal.chi_permutation.size(); ++k)
    text << " e" << k + 1 << "=" << (cal.chi_permutation[k].sign < 0 ? "-" : "") << "t" << cal.chi_permutation[k].index;
  text << "\nproduct of sigmas equals the cyclic matrix: " << (cyclic ? "yes" : "no") << "\n";

  if (!t_s.empty()) {
    const std::vector<double> t = parse_list(t_s, "--t");
    if (static_cast<int>(t.size()) != n1 - 1) throw UsageError("--t needs n values");
    const ComplexMatrix s = steinberg_section(cal, to_vector(t).cast<Complex>());
    o.payload["section"] = real_matrix_json(s.real());
    o.payload["chi"] = complex_vector_json(chi(s));
    text << "s(t) =\n" << matrix_text(s);
  }
  o.text = text.str();
  if (!cyclic) o.exit_code = kVerificationFailure;
  return o;
}

// golden ------------------------------------------------------------------------

struct Identity {
  std::string name;
  double residual;
  bool exact;
};

ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Output cmd_golden(int n1, const Globals& globals) {
  if (n1 != 4 && n1 != 5) throw UsageError("golden data exist only for --n 4 and --n 5");
  Output o;
  o.command = "golden";
  o.n_plus_1 = n1;
  Sampler rng(resolve_seed(globals));
  const double s1 = rng.uniform(-2.0, 2.0);
  const double s2 = rng.uniform(-2.0, 2.0);
  std::vector<Identity> ids;
  json payload = json::object();
  json errata = json::array();
  const SectionCalibration cal = calibrate(n1, resolve_seed(globals));

  // printed tables
  const std::map<int, std::vector<std::vector<Root>>> tables = {
      {4, {{{1, 0}, {2, 3}}, {{1, 3}}, {{0, 3}, {1, 2}}, {{0, 2}}}},
      {5, {{{2, 0}, {3, 4}}, {{1, 0}, {2, 4}}, {{1, 4}, {2, 3}}, {{0, 4}, {1, 3}}, {{0, 3}, {1, 2}}}}};
  int table_bad = 0;
  json table_json = json::array();
  for (int ell = 0; ell < n1; ++ell) {
    std::vector<Root> printed = tables.at(n1)[static_cast<size_t>(ell)];
    std::sort(printed.begin(), printed.end());
    if (printed != supported_roots(n1, ell)) ++table_bad;
    table_json.push_back(roots_json(supported_roots(n1, ell)));
  }
  ids.push_back({"table", static_cast<double>(table_bad), true});
  payload["table"] = table_json;

  ComplexMatrix q1, q2, m_disp;
  std::vector<std::vector<double>> printed_sigmas;
  std::vector<Root> printed_roots;
  ComplexVector disp_params, literal_params;
  const double a = 1.25, b = -0.75, c = 2.5, d = 0.5;  // symbolic entries sampled at fixed values
  if (n1 == 4) {
    q1 = build_q(4, TableRow::Head, {{{1, 0}, -s1}, {{2, 3}, s1}});
    q2 = build_q(4, TableRow::Second, {{{1, 3}, -s2}});
    const ComplexMatrix q1_disp = from_rows({{1, 0, 0, 0}, {-s1, 1, 0, 0}, {0, 0, 1, s1}, {0, 0, 0, 1}});
    const ComplexMatrix q2_disp = from_rows({{1, 0, 0, 0}, {0, 1, 0, -s2}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    ids.push_back({"q1_display", max_abs_diff(q1, q1_disp), false});
    ids.push_back({"q2_display", max_abs_diff(q2, q2_disp), false});
    const double x10 = a, x23 = b, x13 = c;
    m_disp = from_rows({{0, 1, 0, 0}, {-x13, x10, 1, 0}, {x23, 0, 0, 1}, {-1, 0, 0, 0}});
    ComplexVector cp(5);
    cp << 1, -x23, x13, -x10, 1;
    ids.push_back({"m_char_poly", max_abs_diff(char_poly(m_disp).coeffs(), cp), false});
    // the Stokes product lands on the display with x10 = -s1, x13 = -s2, x23 = -s1
    const ComplexMatrix stokes = q1 * q2 * signed_cyclic_shift(4).cast<Complex>();
    ids.push_back({"stokes_product_display",
                   max_abs_diff(stokes, from_rows({{0, 1, 0, 0}, {s2, -s1, 1, 0}, {-s1, 0, 0, 1}, {-1, 0, 0, 0}})), false});
    ComplexVector mp(5);
    mp << 1, s1, -s2, s1, 1;
    ids.push_back({"stokes_char_poly", max_abs_diff(char_poly(stokes).coeffs(), mp), false});
    printed_roots = {{1, 0}, {2, 3}, {0, 2}};
    printed_sigmas = {{0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1},
                    {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0},
                    {0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}};
    literal_params.resize(3);
    literal_params << x10, x23, x13;
    disp_params.resize(3);
    disp_params << x10, -x23, x13;
  } else {
    q1 = build_q(5, TableRow::Head, {{{2, 0}, s2}, {{3, 4}, -s1}});
    q2 = build_q(5, TableRow::Second, {{{1, 0}, s1}, {{2, 4}, -s2}});
    const ComplexMatrix q1_disp =
        from_rows({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {s2, 0, 1, 0, 0}, {0, 0, 0, 1, -s1}, {0, 0, 0, 0, 1}});
    const ComplexMatrix q2_disp =
        from_rows({{1, 0, 0, 0, 0}, {s1, 1, 0, 0, 0}, {0, 0, 1, 0, -s2}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    ids.push_back({"q1_display", max_abs_diff(q1, q1_disp), false});
    ids.push_back({"q2_display", max_abs_diff(q2, q2_disp), false});
    const double x20 = a, x34 = b, x10 = c, x24 = d;
    m_disp = from_rows({{0, 1, 0, 0, 0}, {0, x10, 1, 0, 0}, {x24, x20, 0, 1, 0}, {x34, 0, 0, 0, 1}, {1, 0, 0, 0, 0}});
    ComplexVector cp(6);
    cp << -1, -x34, -x24, -x20, -x10, 1;
    ids.push_back({"m_char_poly", max_abs_diff(char_poly(m_disp).coeffs(), cp), false});
    const ComplexMatrix stokes = q1 * q2 * cyclic_shift(5).cast<Complex>();
    ComplexVector mp(6);
    mp << -1, s1, s2, -s2, -s1, 1;
    ids.push_back({"stokes_char_poly", max_abs_diff(char_poly(stokes).coeffs(), mp), false});
    printed_roots = {{2, 0}, {3, 4}, {0, 3}, {1, 2}};
    printed_sigmas = {{0, 0, 1, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1},
                    {-1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0},
                    {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -1},
                    {0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, -1}};
    literal_params.resize(4);
    literal_params << x20, x34, x10, x24;
    disp_params.resize(4);
    disp_params << x20, x34, -x24, -x10;
  }

  // printed sigma representatives multiply to the cyclic matrix
  std::vector<RealMatrix> sig;
  RealMatrix sprod = RealMatrix::Identity(n1, n1);
  for (const auto& flat : printed_sigmas) {
    RealMatrix s(n1, n1);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) s(i, j) = flat[static_cast<size_t>(i * n1 + j)];
    sig.push_back(s);
    sprod = sprod * s;
  }
  ids.push_back({"printed_sigma_product", max_abs_diff(sprod, twisted_cyclic(n1)), true});

  RealMatrix cprod = RealMatrix::Identity(n1, n1);
  json cal_sigmas = json::array();
  for (const WeylRep& w : cal.reps) {
    cprod = cprod * w.matrix;
    cal_sigmas.push_back(real_matrix_json(w.matrix));
  }
  ids.push_back({"calibrated_sigma_product", max_abs_diff(cprod, twisted_cyclic(n1)), true});
  ids.push_back({"simple_roots", cal.root_order == printed_roots ? 0.0 : 1.0, true});

  // the calibrated section reproduces the display entry for entry
  const ComplexMatrix from_chi = reconstruct_from_chi(cal, chi(m_disp));
  ids.push_back({"section_reproduces_display", max_abs_diff(from_chi, m_disp), false});
  ids.push_back({"section_at_display_params", max_abs_diff(steinberg_section(cal, disp_params), m_disp), false});

  const ComplexMatrix literal = steinberg_product(n1, printed_roots, sig, literal_params);
  const double literal_gap = max_abs_diff(literal, m_disp);
  errata.push_back({{"identity", "printed sigmas with printed parameter order reproduce the display"},
                    {"holds", literal_gap < 1e-12},
                    {"max_entry_gap", literal_gap}});

  // Stokes relations on the printed real family
  const QFamily fam = q_family(n1, q1, q2);
  double fam_res = 0.0;
  for (const auto& [name, r] : fam.residuals) fam_res = std::max(fam_res, r);
  ids.push_back({"q_family_relations", fam_res, false});
  ids.push_back({"q_family_reality", reality_residual(fam), false});

  // closed-form s values against gamma_to_m0 at sample points
  json s_samples = json::array();
  double s_res = 0.0;
  std::vector<GammaVector> gs = {GammaVector(n1, RealVector::Zero(n1)), sample_polytope(n1, rng)};
  if (n1 == 4) gs.emplace_back(4, (RealVector(4) << -1, -3, 3, 1).finished());
  for (const GammaVector& g : gs) {
    const auto [f1, f2] = s_formulas(g);
    const auto [c1, c2] = s_from_char_poly(n1, char_poly(gamma_to_m0(cal, g).matrix()));
    s_res = std::max({s_res, std::abs(f1 - c1), std::abs(f2 - c2)});
    s_samples.push_back({{"gamma", real_vector_json(g.values())}, {"s1", f1}, {"s2", f2}});
  }
  ids.push_back({"s_formulas", s_res, false});

  const double thr = globals.tol.value_or(1e-10);
  json id_json = json::array();
  bool all = true;
  std::ostringstream text;
  text << "golden identities, n+1 = " << n1 << "\n";
  for (const Identity& id : ids) {
    const bool ok = id.exact ? id.residual == 0.0 : id.residual <= thr;
    all = all && ok;
    id_json.push_back({{"name", id.name}, {"residual", id.residual}, {"pass", ok}});
    o.residuals[id.name] = id.residual;
    text << (ok ? "  PASS " : "  FAIL ") << std::left << std::setw(28) << id.name << " residual " << fmt(id.residual) << "\n";
  }
  for (const auto& e : errata)
    text << "  note: " << e["identity"].get<std::string>() << ": " << (e["holds"].get<bool>() ? "holds" : "does not hold")
         << " (gap " << fmt(e["max_entry_gap"].get<double>()) << ")\n";

  payload["identities"] = id_json;
  payload["errata"] = errata;
  payload["q1"] = real_matrix_json(q1.real());
  payload["q2"] = real_matrix_json(q2.real());
  payload["s_params"] = {{"s1", s1}, {"s2", s2}};
  payload["display"] = real_matrix_json(m_disp.real());
  payload["calibrated_sigmas"] = cal_sigmas;
  payload["s_samples"] = s_samples;
  payload["passed"] = all;
  o.payload = payload;
  o.text = text.str();
  o.exit_code = all ? kSuccess : kVerificationFailure;
  return o;
}

// verify ------------------------------------------------------------------------

Output cmd_verify(const std::string& range, int samples, const std::vector<std::string>& suites, const Globals& globals) {
  const auto [lo, hi] = parse_range(range);
  if (samples < 1) throw UsageError("--samples must be positive");
  const std::vector<std::string> known = suite_names();
  for (const std::string& s : suites)
    if (std::find(known.begin(), known.end(), s) == known.end()) throw UsageError("unknown suite '" + s + "'");
  VerifyOptions opts;
  opts.n_min = lo;
  opts.n_max = hi;
  opts.samples = samples;
  opts.seed = resolve_seed(globals);
  opts.tol = globals.tol;
  opts.suites = suites;
  const std::vector<SuiteResult> results = run_suites(opts);

  Output o;
  o.command = "verify";
  o.n_plus_1 = lo;
  json rows = json::array();
  int failed = 0;
  std::ostringstream text;
  text << std::left << std::setw(14) << "suite" << std::setw(6) << "n+1" << std::setw(8) << "result" << std::setw(20)
       << "max residual" << "threshold\n";
  for (const SuiteResult& r : results) {
    if (!r.passed) ++failed;
    rows.push_back({{"suite", r.suite}, {"n_plus_1", r.n_plus_1}, {"passed", r.passed}, {"max_residual", r.max_residual},
                    {"threshold", r.threshold}, {"samples", r.samples}, {"message", r.message}});
    o.residuals[r.suite + ":" + std::to_string(r.n_plus_1)] = r.max_residual;
    text << std::setw(14) << r.suite << std::setw(6) << r.n_plus_1 << std::setw(8) << (r.passed ? "pass" : "FAIL")
         << std::setw(20) << fmt(r.max_residual) << fmt(r.threshold) << (r.message.empty() ? "" : "  " + r.message) << "\n";
  }
  text << results.size() - static_cast<size_t>(failed) << "/" << results.size() << " suites passed\n";
  o.payload = {{"suites", rows}, {"n_range", {lo, hi}}, {"passed", failed == 0}, {"failed", failed}};
  o.text = text.str();
  o.exit_code = failed ? kVerificationFailure : kSuccess;
  return o;
}

json envelope_of(const Output& o) {
  return {{"command", o.command}, {"n_plus_1", o.n_plus_1}, {"payload", o.payload}, {"residuals", o.residuals},
          {"version", TTSTOKES_VERSION}};
}

const std::map<std::string, std::vector<std::pair<std::string, json::value_t>>>& schemas() {
  using V = json::value_t;
  static const std::map<std::string, std::vector<std::pair<std::string, V>>> s = {
      {"roots", {{"directions", V::array}, {"positive_system", V::array}, {"simple_roots", V::object}, {"order_diagram", V::object}}},
      {"directions", {{"directions", V::array}}},
      {"from-gamma", {{"gamma", V::array}, {"in_polytope", V::boolean}, {"eigenvalues", V::array}, {"char_poly", V::array},
                      {"alcove", V::array}, {"in_alcove_subset", V::boolean}, {"m0", V::array}, {"warnings", V::array}}},
      {"alcove", {{"gamma", V::array}, {"rho", V::array}, {"in_polytope", V::boolean}, {"in_alcove", V::boolean}, {"p_fixed", V::boolean}}},
      {"steinberg", {{"root_order", V::array}, {"sign_slots", V::array}, {"sigmas", V::array}, {"chi_permutation", V::array},
                     {"sigma_product", V::array}, {"sigma_product_is_cyclic", V::boolean}}},
      {"golden", {{"identities", V::array}, {"errata", V::array}, {"q1", V::array}, {"q2", V::array}, {"display", V::array},
                  {"calibrated_sigmas", V::array}, {"s_samples", V::array}, {"passed", V::boolean}}},
      {"verify", {{"suites", V::array}, {"n_range", V::array}, {"passed", V::boolean}, {"failed", V::number_integer}}},
  };
  return s;
}

bool type_matches(const json& j, json::value_t want) {
  if (want == json::value_t::number_integer) return j.is_number_integer();
  if (want == json::value_t::number_float) return j.is_number();
  return j.type() == want;
}

}  // namespace

std::vector<std::string> validate_envelope(const json& env) {
  std::vector<std::string> errors;
  if (!env.is_object()) return {"envelope is not an object"};
  const std::pair<const char*, json::value_t> top[] = {{"command", json::value_t::string},
                                                         {"n_plus_1", json::value_t::number_integer},
                                                         {"payload", json::value_t::object},
                                                         {"residuals", json::value_t::object},
                                                         {"version", json::value_t::string}};
  for (const auto& [key, type] : top) {
    if (!env.contains(key)) errors.push_back(std::string("missing ") + key);
    else if (!type_matches(env[key], type)) errors.push_back(std::string("wrong type for ") + key);
  }
  if (!errors.empty()) return errors;
  for (const auto& [k, v] : env["residuals"].items())
    if (!v.is_number() && !v.is_null()) errors.push_back("residual " + k + " is not a number");
  const auto it = schemas().find(env["command"].get<std::string>());
  if (it == schemas().end()) {
    errors.push_back("unknown command");
    return errors;
  }
  for (const auto& [key, type] : it->second) {
    if (!env["payload"].contains(key)) errors.push_back("payload missing " + key);
    else if (!type_matches(env["payload"][key], type)) errors.push_back("payload field " + key + " has the wrong type");
  }
  return errors;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monodromy data of the tt*-Toda equations. --n is n+1, the matrix size."};
  app.require_subcommand(1);
  Globals globals;
  long long seed_value = 0;
  double tol_value = 0.0;
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  auto* tol_opt = app.add_option("--tol", tol_value, "Override assertion tolerances")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed_value, "Random seed (falls back to TTSTOKES_SEED)");
  app.fallthrough();

  std::string n_arg, gamma, gamma_free, rho, t_arg, range = "3..10";
  int samples = 20;
  std::vector<std::string> suites;

  auto* roots = app.add_subcommand("roots", "Supported roots per singular direction over a half period");
  roots->add_option("--n", n_arg, "n+1")->required();
  auto* directions = app.add_subcommand("directions", "All 2(n+1) singular directions");
  directions->add_option("--n", n_arg, "n+1")->required();
  auto* from_gamma = app.add_subcommand("from-gamma", "Monodromy data from asymptotic data gamma");
  from_gamma->add_option("--n", n_arg, "n+1")->required();
  from_gamma->add_option("--gamma", gamma, "gamma_0,...,gamma_n");
  from_gamma->add_option("--gamma-free", gamma_free, "gamma_0,...,gamma_{m-1}");
  auto* alcove = app.add_subcommand("alcove", "Convert between gamma and alcove coordinates");
  alcove->add_option("--n", n_arg, "n+1")->required();
  alcove->add_option("--gamma", gamma, "gamma_0,...,gamma_n");
  alcove->add_option("--gamma-free", gamma_free, "gamma_0,...,gamma_{m-1}");
  alcove->add_option("--rho", rho, "rho_0,...,rho_n");
  auto* steinberg = app.add_subcommand("steinberg", "Calibrated Steinberg cross-section");
  steinberg->add_option("--n", n_arg, "n+1")->required();
  steinberg->add_option("--t", t_arg, "real section parameters t_1,...,t_n");
  auto* golden = app.add_subcommand("golden", "Worked examples for n+1 = 4 and 5");
  golden->add_option("--n", n_arg, "n+1 (4 or 5)")->required();
  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--n", range, "n+1 or a range lo..hi");
  verify->add_option("--samples", samples, "Random samples per suite");
  verify->add_option("--suite", suites, "Restrict to named suites (repeatable)");

  std::vector<const char*> argv{"ttstokes"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }
  if (*tol_opt) globals.tol = tol_value;
  if (*seed_opt) globals.seed = seed_value;

  try {
    Output o;
    if (roots->parsed()) o = cmd_roots(parse_rank(n_arg));
    else if (directions->parsed()) o = cmd_directions(parse_rank(n_arg));
    else if (from_gamma->parsed()) {
      const int n1 = parse_rank(n_arg);
      o = cmd_from_gamma(n1, read_gamma(n1, gamma, gamma_free), globals);
    } else if (alcove->parsed()) o = cmd_alcove(parse_rank(n_arg), gamma, gamma_free, rho);
    else if (steinberg->parsed()) o = cmd_steinberg(parse_rank(n_arg), t_arg, globals);
    else if (golden->parsed()) o = cmd_golden(parse_rank(n_arg), globals);
    else if (verify->parsed()) o = cmd_verify(range, samples, suites, globals);

    if (globals.format == "json") out << dump_json(envelope_of(o));
    else out << o.text;
    return o.exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DimensionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

}  // namespace ttstokes::cli
