// Reference computations used only by the tests. Each one avoids the code path it checks.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "ttstokes/linalg.hpp"
#include "ttstokes/roots.hpp"

namespace oracle {

using ttstokes::Complex;
using ttstokes::ComplexMatrix;
using ttstokes::ComplexVector;

// Faddeev-LeVerrier; ascending coefficients of det(mu I - A).
inline ComplexVector faddeev_leverrier(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  ComplexVector c = ComplexVector::Zero(n + 1);
  c[n] = 1.0;
  ComplexMatrix mk = ComplexMatrix::Zero(n, n);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + c[n - k + 1] * id;
    c[n - k] = -(a * mk).trace() / static_cast<double>(k);
  }
  return c;
}

// Laplace expansion along the first row.
inline Complex cofactor_det(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 1) return a(0, 0);
  Complex det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    det += (j % 2 == 0 ? 1.0 : -1.0) * a(0, j) * cofactor_det(minor);
  }
  return det;
}

// arg(omega^j - omega^i) = pi/2 + pi(i+j)/(n+1) for j > i, minus pi for j < i.
// Angles in units of pi/(2(n+1)) so the comparison is exact.
inline std::vector<ttstokes::Root> supported_roots(int n1, int ell) {
  const int period = 4 * n1;
  const int theta = n1 % 2 == 0 ? -2 * (ell + 1) : -(2 * ell + 1);
  std::vector<ttstokes::Root> out;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      if (i == j) continue;
      const int arg = (j > i ? n1 : -n1) + 2 * (i + j);
      if (((arg - theta) % period + period) % period == 0) out.push_back({i, j});
    }
  return out;
}

}  // namespace oracle
