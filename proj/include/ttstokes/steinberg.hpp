#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttstokes/linalg.hpp"
#include "ttstokes/roots.hpp"

namespace ttstokes {

// Which off-diagonal entry of the swap block carries -1.
enum class SignSlot { Lower, Upper };  // (max, min) or (min, max)

struct WeylRep {
  Root root;
  SignSlot sign_slot = SignSlot::Lower;
  RealMatrix matrix;

  static WeylRep make(int n_plus_1, Root root, SignSlot slot);
};

// e_k = sign * t[index]
struct SignedIndex {
  int index = 0;
  int sign = 1;
};

struct SectionCalibration {
  int n_plus_1 = 3;
  std::vector<Root> root_order;  // head block then tail block, table order
  std::vector<WeylRep> reps;
  std::vector<SignedIndex> chi_permutation;
  double linearity_residual = 0.0;

  ComplexVector chi_of_params(const ComplexVector& t) const;
  ComplexVector params_of_chi(const ComplexVector& e) const;
};

SectionCalibration calibrate(int n_plus_1, std::uint64_t seed = 1, Tolerance tol = {});

// e_1(t_1) sigma_1 ... e_n(t_n) sigma_n for arbitrary root/sigma lists.
ComplexMatrix steinberg_product(int n_plus_1, std::span<const Root> roots, std::span<const RealMatrix> sigmas,
                                const ComplexVector& t);
ComplexMatrix steinberg_section(const SectionCalibration& cal, const ComplexVector& t);

// e_1..e_n of the eigenvalues, read off the characteristic polynomial.
ComplexVector chi(const ComplexMatrix& m, Tolerance tol = {}, std::vector<std::string>* warnings = nullptr);

ComplexMatrix reconstruct_from_chi(const SectionCalibration& cal, const ComplexVector& e);

struct SectionReport {
  int samples = 0;
  int forward_pass = 0;
  int converse_pass = 0;
  int regular_pass = 0;
  double max_forward_residual = 0.0;
  double max_converse_residual = 0.0;
  std::optional<std::string> offending;

  bool passed() const { return forward_pass == samples && converse_pass == samples && regular_pass == samples; }
};

SectionReport section_check(const SectionCalibration& cal, int samples, std::uint64_t seed, Tolerance tol = {});

// dim { X : X M = M X }
int commutant_dimension(const ComplexMatrix& m, double threshold = 1e-9);

struct ConjugacyReport {
  int samples = 0;
  double max_spectral_mismatch = 0.0;
  double max_unitarity_defect = 0.0;
  double max_conjugator_residual = 0.0;
  double min_nonunitarity = 0.0;  // of g; shows the test is not vacuous
};

// Unitary k1, non-unitary g with g k1 g^-1 unitary; checks the two are unitarily conjugate.
ConjugacyReport unitary_conjugacy_check(int n_plus_1, int samples, std::uint64_t seed);

}  // namespace ttstokes
