#include "ttstokes/stokes.hpp"

#include <algorithm>
#include <cmath>

namespace ttstokes {

namespace {

RootCoeffs checked_coeffs(int n_plus_1, TableRow which, const RootCoeffs& given) {
  const std::vector<Root> keys = table_supported_roots(n_plus_1, which);
  RootCoeffs out;
  for (const Root& r : keys) out[r] = 0.0;
  for (const auto& [r, v] : given) {
    if (!out.count(r))
      throw KeyError("root " + to_string(r) + " is not supported by the " + to_string(which) + " direction");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("coefficient for " + to_string(r) + " is not finite");
    out[r] = v;
  }
  return out;
}

double scale_of(const ComplexMatrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

// Row-reduced constraint system for the inversion relation; columns are head then second roots,
// reduced right to left so the free columns come first.
struct SymmetricBasis {
  std::vector<std::pair<TableRow, Root>> columns;
  RealMatrix rref;
  std::vector<int> pivots;
  std::vector<int> free;
};

SymmetricBasis symmetric_basis(int n_plus_1) {
  SymmetricBasis b;
  for (const Root& r : table_supported_roots(n_plus_1, TableRow::Head)) b.columns.emplace_back(TableRow::Head, r);
  for (const Root& r : table_supported_roots(n_plus_1, TableRow::Second)) b.columns.emplace_back(TableRow::Second, r);
  const int nv = static_cast<int>(b.columns.size());
  const int dim = n_plus_1;
  const RealMatrix p = twisted_cyclic(n_plus_1);

  const int labels = 2 * n_plus_1;
  RealMatrix a = RealMatrix::Zero(static_cast<Eigen::Index>(n_plus_1) * dim * dim, nv);
  for (int col = 0; col < nv; ++col) {
    const int parity = b.columns[col].first == TableRow::Head ? 0 : 1;
    const Root r = b.columns[col].second;
    std::vector<RealMatrix> nl(static_cast<size_t>(labels), RealMatrix::Zero(dim, dim));
    RealMatrix cur = matrix_unit(dim, r.i, r.j);
    for (int ell = parity; ell < labels; ell += 2) {
      nl[ell] = cur;
      cur = p * cur * p.transpose();
    }
    for (int ell = 0; ell < n_plus_1; ++ell) {
      const RealMatrix c = nl[ell + n_plus_1] + nl[ell].transpose();
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a((ell * dim + i) * dim + j, nv - 1 - col) = c(i, j);
    }
  }

  int row = 0;
  std::vector<int> pivots_rev;
  for (int col = 0; col < nv && row < a.rows(); ++col) {
    Eigen::Index best;
    const double mag = a.col(col).tail(a.rows() - row).cwiseAbs().maxCoeff(&best);
    if (mag < 1e-12) continue;
    a.row(row).swap(a.row(row + best));
    a.row(row) /= a(row, col);
    for (Eigen::Index r2 = 0; r2 < a.rows(); ++r2)
      if (r2 != row && a(r2, col) != 0.0) a.row(r2) -= a(r2, col) * a.row(row);
    pivots_rev.push_back(col);
    ++row;
  }
  // undo column reversal
  b.rref = a.topRows(row).rowwise().reverse();
  for (int pc : pivots_rev) b.pivots.push_back(nv - 1 - pc);
  for (int col = 0; col < nv; ++col)
    if (std::find(b.pivots.begin(), b.pivots.end(), col) == b.pivots.end()) b.free.push_back(col);
  return b;
}

}  // namespace

StokesParams::StokesParams(int n_plus_1, RootCoeffs head, RootCoeffs second)
    : n1_(require_rank(n_plus_1)),
      head_(checked_coeffs(n_plus_1, TableRow::Head, head)),
      second_(checked_coeffs(n_plus_1, TableRow::Second, second)) {}

StokesParams StokesParams::zero(int n_plus_1) { return StokesParams(n_plus_1, {}, {}); }

std::vector<std::pair<TableRow, Root>> symmetric_free_roots(int n_plus_1) {
  const SymmetricBasis b = symmetric_basis(require_rank(n_plus_1));
  std::vector<std::pair<TableRow, Root>> out;
  for (int col : b.free) out.push_back(b.columns[col]);
  return out;
}

StokesParams StokesParams::symmetric(int n_plus_1, std::span<const Complex> free) {
  const SymmetricBasis b = symmetric_basis(require_rank(n_plus_1));
  if (free.size() != b.free.size())
    throw DimensionError("expected " + std::to_string(b.free.size()) + " free coefficients, got " +
                         std::to_string(free.size()));
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(b.columns.size()));
  for (size_t k = 0; k < free.size(); ++k) v[b.free[k]] = free[k];
  for (size_t r = 0; r < b.pivots.size(); ++r) {
    Complex acc = 0.0;
    for (int col : b.free) acc += b.rref(static_cast<Eigen::Index>(r), col) * v[col];
    v[b.pivots[r]] = -acc;
  }
  RootCoeffs head, second;
  for (size_t col = 0; col < b.columns.size(); ++col) {
    auto& target = b.columns[col].first == TableRow::Head ? head : second;
    target[b.columns[col].second] = v[static_cast<Eigen::Index>(col)];
  }
  return StokesParams(n_plus_1, head, second);
}

Pattern q_pattern(int n_plus_1, int ell) {
  require_rank(n_plus_1);
  const double pi = std::numbers::pi;
  const int n = n_plus_1 - 1;
  const double angle = n_plus_1 % 2 == 0 ? (n - ell) * pi / n_plus_1
                                         : (2.0 * n + 1.0 - 2.0 * ell) * pi / (2.0 * n_plus_1);
  const Complex target = std::polar(1.0, angle);
  const UnitRoots w(n_plus_1);
  Pattern p = Pattern::Identity(n_plus_1, n_plus_1);
  for (int i = 0; i < n_plus_1; ++i)
    for (int j = 0; j < n_plus_1; ++j) {
      if (i == j) continue;
      const Complex d = w.omega_pow(i) - w.omega_pow(j);
      p(i, j) = std::abs(d / std::abs(d) - target) < 1e-9;
    }
  return p;
}

Pattern supported_pattern(int n_plus_1, int ell) {
  Pattern p = Pattern::Identity(n_plus_1, n_plus_1);
  for (const Root& r : supported_roots(n_plus_1, ell)) p(r.i, r.j) = true;
  return p;
}

ComplexMatrix build_q(int n_plus_1, TableRow which, const RootCoeffs& coeffs) {
  if (which == TableRow::Tail) throw DomainError("build_q takes the head or second direction");
  const RootCoeffs checked = checked_coeffs(require_rank(n_plus_1), which, coeffs);
  ComplexMatrix q = ComplexMatrix::Identity(n_plus_1, n_plus_1);
  for (const auto& [r, v] : checked) q(r.i, r.j) += v;
  return q;
}

ComplexMatrix unipotent_product(int n_plus_1, std::span<const std::pair<Root, Complex>> factors) {
  ComplexMatrix q = ComplexMatrix::Identity(n_plus_1, n_plus_1);
  for (const auto& [r, v] : factors) {
    ComplexMatrix e = ComplexMatrix::Identity(n_plus_1, n_plus_1);
    e(r.i, r.j) += v;
    q = q * e;
  }
  return q;
}

RealMatrix cyclic_shift(int n_plus_1) {
  RealMatrix p = RealMatrix::Zero(n_plus_1, n_plus_1);
  for (int i = 0; i + 1 < n_plus_1; ++i) p(i, i + 1) = 1.0;
  p(n_plus_1 - 1, 0) = 1.0;
  return p;
}

RealMatrix signed_cyclic_shift(int n_plus_1) {
  RealMatrix p = cyclic_shift(n_plus_1);
  p(n_plus_1 - 1, 0) = -1.0;
  return p;
}

RealMatrix twisted_cyclic(int n_plus_1) {
  return n_plus_1 % 2 == 0 ? signed_cyclic_shift(n_plus_1) : cyclic_shift(n_plus_1);
}

MonodromyMatrix::MonodromyMatrix(int n_plus_1, ComplexMatrix matrix, Tolerance tol)
    : n1_(require_rank(n_plus_1)), m_(std::move(matrix)) {
  if (m_.rows() != n1_ || m_.cols() != n1_) throw DimensionError("monodromy matrix has the wrong size");
  if (!m_.allFinite()) throw DomainError("monodromy matrix has non-finite entries");
  const double det_err = std::abs(m_.determinant() - 1.0);
  if (det_err > tol.bound(1.0)) throw NumericalError("monodromy matrix does not have determinant 1", det_err);
}

MonodromyMatrix build_m0(const StokesParams& params) {
  const int n1 = params.n_plus_1();
  const ComplexMatrix m = build_q(n1, TableRow::Head, params.head()) *
                          build_q(n1, TableRow::Second, params.second()) *
                          twisted_cyclic(n1).cast<Complex>();
  return MonodromyMatrix(n1, m);
}

QFamily q_family(int n_plus_1, const ComplexMatrix& q1, const ComplexMatrix& q2, Tolerance tol) {
  require_rank(n_plus_1);
  if (q1.rows() != n_plus_1 || q1.cols() != n_plus_1 || q2.rows() != n_plus_1 || q2.cols() != n_plus_1)
    throw DimensionError("Stokes factors have the wrong size");

  QFamily fam;
  fam.n_plus_1 = n_plus_1;
  const int labels = 2 * n_plus_1;
  const ComplexMatrix p = twisted_cyclic(n_plus_1).cast<Complex>();
  const ComplexMatrix p_inv = p.transpose();

  std::vector<ComplexMatrix> q(static_cast<size_t>(labels + 2));
  q[0] = q1;
  q[1] = q2;
  for (int ell = 2; ell < labels + 2; ++ell) q[ell] = p * q[ell - 2] * p_inv;

  double pattern = 0.0;
  for (int ell = 0; ell < labels; ++ell) {
    const Pattern pat = q_pattern(n_plus_1, ell);
    for (int i = 0; i < n_plus_1; ++i)
      for (int j = 0; j < n_plus_1; ++j) {
        const Complex expected_diag = i == j ? Complex(1.0) : Complex(0.0);
        if (i == j || !pat(i, j)) pattern = std::max(pattern, std::abs(q[ell](i, j) - expected_diag));
      }
  }
  double inversion = 0.0;
  for (int ell = 0; ell < n_plus_1; ++ell) {
    const ComplexMatrix rhs = q[ell].transpose().inverse();
    inversion = std::max(inversion, max_abs_diff(q[ell + n_plus_1], rhs) / scale_of(rhs));
  }
  const double period =
      std::max(max_abs_diff(q[labels], q[0]) / scale_of(q[0]), max_abs_diff(q[labels + 1], q[1]) / scale_of(q[1]));

  fam.residuals = {{"inversion", inversion}, {"pattern", pattern}, {"period", period}};
  for (const auto& [name, value] : fam.residuals)
    if (!(value <= tol.bound(1.0))) throw ConsistencyError(name + " relation violated, residual " + std::to_string(value));

  for (int ell = 0; ell < labels; ++ell) fam.factors[ell] = q[ell];
  return fam;
}

RealMatrix reality_matrix(int n_plus_1) {
  const double sign = n_plus_1 % 2 == 0 ? -1.0 : 1.0;
  RealMatrix c = RealMatrix::Zero(n_plus_1, n_plus_1);
  c(0, 0) = 1.0;
  for (int i = 1; i < n_plus_1; ++i) c(i, n_plus_1 - i) = sign;
  return c;
}

double reality_residual(const QFamily& family) {
  const int n1 = family.n_plus_1;
  const int labels = 2 * n1;
  const ComplexMatrix c = reality_matrix(n1).cast<Complex>();
  const int shift = n1 % 2 == 0 ? -2 : -1;
  double worst = 0.0;
  for (const auto& [ell, q] : family.factors) {
    const int partner = (((shift - ell) % labels) + labels) % labels;
    const ComplexMatrix rhs = c * family.factors.at(partner).conjugate().inverse() * c;
    worst = std::max(worst, max_abs_diff(q, rhs) / scale_of(q));
  }
  return worst;
}

ComplexMatrix full_monodromy(const MonodromyMatrix& m0) {
  const int n1 = m0.n_plus_1();
  const ComplexMatrix base = n1 % 2 == 0 ? ComplexMatrix(UnitRoots(n1).half_pow(1) * m0.matrix()) : m0.matrix();
  ComplexMatrix acc = ComplexMatrix::Identity(n1, n1);
  for (int k = 0; k < n1; ++k) acc = acc * base;
  return acc;
}

Decomposition decompose_m0(int n_plus_1, const ComplexMatrix& m) {
  require_rank(n_plus_1);
  if (m.rows() != n_plus_1 || m.cols() != n_plus_1) throw DimensionError("matrix has the wrong size");
  const std::vector<Root> head = table_supported_roots(n_plus_1, TableRow::Head);
  const std::vector<Root> second = table_supported_roots(n_plus_1, TableRow::Second);
  const ComplexMatrix nmat = m * twisted_cyclic(n_plus_1).transpose().cast<Complex>();

  Pattern free_slot = Pattern::Zero(n_plus_1, n_plus_1);
  for (const Root& r : second) free_slot(r.i, r.j) = true;

  // (I - A) N - I vanishes off the second-direction slots; solve for A.
  std::vector<std::pair<int, int>> eqs;
  for (int p = 0; p < n_plus_1; ++p)
    for (int q = 0; q < n_plus_1; ++q)
      if (!free_slot(p, q)) eqs.emplace_back(p, q);
  ComplexMatrix lhs = ComplexMatrix::Zero(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(head.size()));
  ComplexVector rhs(static_cast<Eigen::Index>(eqs.size()));
  for (size_t e = 0; e < eqs.size(); ++e) {
    const auto [p, q] = eqs[e];
    rhs[static_cast<Eigen::Index>(e)] = nmat(p, q) - (p == q ? 1.0 : 0.0);
    for (size_t a = 0; a < head.size(); ++a)
      if (head[a].i == p) lhs(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(a)) = nmat(head[a].j, q);
  }
  const ComplexVector a = lhs.colPivHouseholderQr().solve(rhs);

  RootCoeffs hc, sc;
  ComplexMatrix inv_head = ComplexMatrix::Identity(n_plus_1, n_plus_1);
  for (size_t k = 0; k < head.size(); ++k) {
    hc[head[k]] = a[static_cast<Eigen::Index>(k)];
    inv_head(head[k].i, head[k].j) -= a[static_cast<Eigen::Index>(k)];
  }
  const ComplexMatrix q2 = inv_head * nmat;
  for (const Root& r : second) sc[r] = q2(r.i, r.j);

  StokesParams params(n_plus_1, hc, sc);
  const ComplexMatrix rebuilt = build_q(n_plus_1, TableRow::Head, hc) * build_q(n_plus_1, TableRow::Second, sc) *
                                twisted_cyclic(n_plus_1).cast<Complex>();
  return {params, max_abs_diff(rebuilt, m)};
}

}  // namespace ttstokes
