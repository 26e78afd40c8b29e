#include "ttstokes/roots.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ttstokes {

std::string to_string(const Root& r) {
  return "(" + std::to_string(r.i) + "," + std::to_string(r.j) + ")";
}

std::string to_string(TableRow row) {
  switch (row) {
    case TableRow::Head: return "head";
    case TableRow::Second: return "second";
    case TableRow::Tail: return "tail";
  }
  return "?";
}

std::string to_string(SimpleSystemFailure f) {
  switch (f) {
    case SimpleSystemFailure::None: return "none";
    case SimpleSystemFailure::DependentCandidate: return "dependent candidate";
    case SimpleSystemFailure::NotPositive: return "candidate not in positive system";
    case SimpleSystemFailure::NotInSpan: return "positive root not an integer combination";
    case SimpleSystemFailure::NegativeCoefficient: return "negative coefficient";
  }
  return "?";
}

int require_rank(int n_plus_1) {
  if (n_plus_1 < 3) throw DomainError("n+1 must be at least 3, got " + std::to_string(n_plus_1));
  return n_plus_1;
}

SingularDirection SingularDirection::make(int n_plus_1, int ell) {
  require_rank(n_plus_1);
  const double pi = std::numbers::pi;
  const double theta = n_plus_1 % 2 == 0 ? -(ell + 1) * pi / n_plus_1
                                         : -(2.0 * ell + 1.0) * pi / (2.0 * n_plus_1);
  return {n_plus_1, ell, theta};
}

std::vector<Root> all_roots(int n_plus_1) {
  require_rank(n_plus_1);
  std::vector<Root> out;
  out.reserve(static_cast<size_t>(n_plus_1 * (n_plus_1 - 1)));
  for (int i = 0; i < n_plus_1; ++i)
    for (int j = 0; j < n_plus_1; ++j)
      if (i != j) out.push_back({i, j});
  return out;
}

std::vector<Root> supported_roots(int n_plus_1, int ell) {
  const SingularDirection dir = SingularDirection::make(n_plus_1, ell);
  const UnitRoots w(n_plus_1);
  const Complex target = std::polar(1.0, dir.theta);
  std::vector<Root> out;
  for (const Root& r : all_roots(n_plus_1)) {
    const Complex d = w.omega_pow(r.j) - w.omega_pow(r.i);
    if (std::abs(d / std::abs(d) - target) < 1e-9) out.push_back(r);
  }
  return out;
}

namespace {

struct Emitter {
  std::vector<Root> out;
  template <typename F>
  void run(int count, F f) {
    for (int r = 0; r < count; ++r) out.push_back(f(r));
  }
};

}  // namespace

std::vector<Root> table_supported_roots(int n_plus_1, TableRow which) {
  require_rank(n_plus_1);
  const bool even = n_plus_1 % 2 == 0;
  const int m = n_plus_1 / 2;
  const int c = m / 2;
  if (c < 1 && n_plus_1 != 3) throw DomainError("closed-form tables need c >= 1");
  Emitter e;
  using R = Root;

  if (even && m % 2 == 0) {
    switch (which) {
      case TableRow::Head:
        e.run(c, [&](int r) { return R{2 * c - 1 - r, r}; });
        e.run(c, [&](int r) { return R{2 * c + r, 4 * c - 1 - r}; });
        break;
      case TableRow::Second:
        e.run(c, [&](int r) { return R{2 * c - 1 + r, 4 * c - 1 - r}; });
        e.run(c - 1, [&](int r) { return R{2 * c - 2 - r, r}; });
        break;
      case TableRow::Tail:
        e.run(c - 1, [&](int r) { return R{4 * c - 1 - r, 2 * c + 1 + r}; });
        e.run(c, [&](int r) { return R{r, 2 * c - r}; });
        break;
    }
  } else if (even) {
    switch (which) {
      case TableRow::Head:
        e.run(c, [&](int r) { return R{2 * c + 1 + r, 4 * c + 1 - r}; });
        e.run(c, [&](int r) { return R{2 * c - r, r}; });
        break;
      case TableRow::Second:
        e.run(c, [&](int r) { return R{2 * c - 1 - r, r}; });
        e.run(c + 1, [&](int r) { return R{2 * c + r, 4 * c + 1 - r}; });
        break;
      case TableRow::Tail:
        e.run(c + 1, [&](int r) { return R{r, 2 * c + 1 - r}; });
        e.run(c, [&](int r) { return R{4 * c + 1 - r, 2 * c + 2 + r}; });
        break;
    }
  } else if (m % 2 == 0) {
    switch (which) {
      case TableRow::Head:
        e.run(c, [&](int r) { return R{2 * c - r, r}; });
        e.run(c, [&](int r) { return R{2 * c + 1 + r, 4 * c - r}; });
        break;
      case TableRow::Second:
        e.run(c, [&](int r) { return R{2 * c + r, 4 * c - r}; });
        e.run(c, [&](int r) { return R{2 * c - 1 - r, r}; });
        break;
      case TableRow::Tail:
        e.run(c - 1, [&](int r) { return R{4 * c - r, 2 * c + 2 + r}; });
        e.run(c + 1, [&](int r) { return R{r, 2 * c + 1 - r}; });
        break;
    }
  } else {
    switch (which) {
      case TableRow::Head:
        e.run(c + 1, [&](int r) { return R{2 * c + 1 - r, r}; });
        e.run(c, [&](int r) { return R{2 * c + 2 + r, 4 * c + 2 - r}; });
        break;
      case TableRow::Second:
        e.run(c, [&](int r) { return R{2 * c - r, r}; });
        e.run(c + 1, [&](int r) { return R{2 * c + 1 + r, 4 * c + 2 - r}; });
        break;
      case TableRow::Tail:
        e.run(c + 1, [&](int r) { return R{r, 2 * c + 2 - r}; });
        e.run(c, [&](int r) { return R{4 * c + 2 - r, 2 * c + 3 + r}; });
        break;
    }
  }
  return e.out;
}

std::vector<Root> half_period_roots(int n_plus_1) {
  std::set<Root> acc;
  for (int ell = 0; ell < n_plus_1; ++ell)
    for (const Root& r : supported_roots(n_plus_1, ell)) acc.insert(r);
  for (const Root& r : all_roots(n_plus_1)) {
    const bool has = acc.count(r) > 0;
    const bool has_neg = acc.count(r.negated()) > 0;
    if (has == has_neg)
      throw ConsistencyError("half period does not pick exactly one of " + to_string(r) + " and its negative");
  }
  return {acc.begin(), acc.end()};
}

bool is_positive_system(std::span<const Root> positive, int n_plus_1) {
  const std::set<Root> s(positive.begin(), positive.end());
  for (const Root& r : all_roots(n_plus_1))
    if ((s.count(r) > 0) == (s.count(r.negated()) > 0)) return false;
  for (const Root& a : s)
    for (const Root& b : s)
      if (a.j == b.i && a.i != b.j && !s.count(Root{a.i, b.j})) return false;
  return true;
}

SimpleSystemCertificate simple_system_check(std::span<const Root> candidate, std::span<const Root> positive) {
  SimpleSystemCertificate cert;
  int dim = 1;
  for (const Root& r : candidate) dim = std::max({dim, r.i + 1, r.j + 1});
  for (const Root& r : positive) dim = std::max({dim, r.i + 1, r.j + 1});

  const auto vec = [dim](const Root& r) {
    RealVector v = RealVector::Zero(dim);
    v[r.i] += 1.0;
    v[r.j] -= 1.0;
    return v;
  };

  const Eigen::Index k = static_cast<Eigen::Index>(candidate.size());
  RealMatrix basis(dim, k);
  for (Eigen::Index c = 0; c < k; ++c) basis.col(c) = vec(candidate[static_cast<size_t>(c)]);
  Eigen::FullPivLU<RealMatrix> lu(basis);
  lu.setThreshold(1e-10);
  if (lu.rank() != k) {
    cert.failure = SimpleSystemFailure::DependentCandidate;
    cert.message = "candidate roots are linearly dependent";
    return cert;
  }

  const std::set<Root> pos(positive.begin(), positive.end());
  for (const Root& r : candidate) {
    if (!pos.count(r)) {
      cert.failure = SimpleSystemFailure::NotPositive;
      cert.message = to_string(r) + " is not in the positive system";
      return cert;
    }
  }

  const Eigen::ColPivHouseholderQR<RealMatrix> qr(basis);
  for (const Root& r : positive) {
    const RealVector v = vec(r);
    const RealVector x = qr.solve(v);
    std::vector<int> coeffs(static_cast<size_t>(k));
    const double residual = (basis * x - v).cwiseAbs().maxCoeff();
    for (Eigen::Index c = 0; c < k; ++c) {
      const double rounded = std::round(x[c]);
      if (residual > 1e-9 || std::abs(x[c] - rounded) > 1e-9) {
        cert.failure = SimpleSystemFailure::NotInSpan;
        cert.message = to_string(r) + " is not an integer combination of the candidate";
        return cert;
      }
      coeffs[static_cast<size_t>(c)] = static_cast<int>(rounded);
    }
    if (std::any_of(coeffs.begin(), coeffs.end(), [](int v) { return v < 0; })) {
      cert.failure = SimpleSystemFailure::NegativeCoefficient;
      cert.message = to_string(r) + " needs a negative coefficient";
      return cert;
    }
    cert.coefficients.emplace_back(r, std::move(coeffs));
  }
  return cert;
}

std::vector<int> OrderDiagram::top_row() const {
  std::vector<int> out;
  for (size_t p = 0; p < order.size(); ++p)
    if (rows[p] == DiagramRow::Top) out.push_back(order[p]);
  return out;
}

std::vector<int> OrderDiagram::bottom_row() const {
  std::vector<int> out;
  for (size_t p = 0; p < order.size(); ++p)
    if (rows[p] == DiagramRow::Bottom) out.push_back(order[p]);
  return out;
}

int OrderDiagram::position(int index) const {
  const auto it = std::find(order.begin(), order.end(), index);
  if (it == order.end()) throw DomainError("index " + std::to_string(index) + " not in diagram");
  return static_cast<int>(it - order.begin());
}

std::vector<Root> OrderDiagram::head_roots() const {
  std::vector<Root> out;
  for (size_t p = 0; p + 1 < order.size(); ++p)
    if (rows[p] == DiagramRow::Top) out.push_back({order[p + 1], order[p]});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Root> OrderDiagram::tail_roots() const {
  std::vector<Root> out;
  for (size_t p = 0; p + 1 < order.size(); ++p)
    if (rows[p] == DiagramRow::Bottom) out.push_back({order[p + 1], order[p]});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Root> OrderDiagram::simple_roots() const {
  std::vector<Root> out = head_roots();
  const std::vector<Root> tail = tail_roots();
  out.insert(out.end(), tail.begin(), tail.end());
  std::sort(out.begin(), out.end());
  return out;
}

OrderDiagram order_diagram(int n_plus_1) {
  require_rank(n_plus_1);
  const bool even = n_plus_1 % 2 == 0;
  const int m = n_plus_1 / 2;
  const int c = m / 2;
  std::vector<int> top, bottom;
  bool top_first = true;

  const auto range_up = [](std::vector<int>& v, int lo, int hi) {
    for (int x = lo; x <= hi; ++x) v.push_back(x);
  };
  const auto range_down = [](std::vector<int>& v, int hi, int lo) {
    for (int x = hi; x >= lo; --x) v.push_back(x);
  };

  if (even && m % 2 == 0) {
    range_up(top, 3 * c, 4 * c - 1);
    range_up(top, 0, c - 1);
    range_down(bottom, 3 * c - 1, c);
  } else if (even) {
    range_up(top, 3 * c + 2, 4 * c + 1);
    range_up(top, 0, c);
    range_down(bottom, 3 * c + 1, c + 1);
    top_first = false;
  } else if (m % 2 == 0) {
    range_up(top, 3 * c + 1, 4 * c);
    range_up(top, 0, c);
    range_down(bottom, 3 * c, c + 1);
  } else {
    range_up(top, 3 * c + 3, 4 * c + 2);
    range_up(top, 0, c);
    range_down(bottom, 3 * c + 2, c + 1);
    top_first = false;
  }

  OrderDiagram d;
  d.n_plus_1 = n_plus_1;
  const std::vector<int>& first = top_first ? top : bottom;
  const std::vector<int>& second = top_first ? bottom : top;
  const DiagramRow first_row = top_first ? DiagramRow::Top : DiagramRow::Bottom;
  const DiagramRow second_row = top_first ? DiagramRow::Bottom : DiagramRow::Top;
  for (size_t p = 0; p < first.size(); ++p) {
    d.order.push_back(first[p]);
    d.rows.push_back(first_row);
    if (p < second.size()) {
      d.order.push_back(second[p]);
      d.rows.push_back(second_row);
    }
  }
  return d;
}

}  // namespace ttstokes
