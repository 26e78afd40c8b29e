#pragma once

#include <cstdint>
#include <random>

#include "ttstokes/linalg.hpp"

namespace ttstokes {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  Complex complex_normal() { return {normal(), normal()}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  RealVector real_vector(Eigen::Index n) {
    RealVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = normal();
    return v;
  }
  ComplexVector complex_vector(Eigen::Index n) {
    ComplexVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = complex_normal();
    return v;
  }
  ComplexMatrix complex_matrix(Eigen::Index n) {
    ComplexMatrix m(n, n);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = complex_normal();
    return m;
  }
  ComplexMatrix unitary(Eigen::Index n) {
    const Eigen::HouseholderQR<ComplexMatrix> qr(complex_matrix(n));
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ttstokes
