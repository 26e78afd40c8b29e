#pragma once

#include <compare>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ttstokes/linalg.hpp"

namespace ttstokes {

// alpha_{i,j} = v_i - v_j; also names the matrix unit E_{i,j}.
struct Root {
  int i = 0;
  int j = 1;

  auto operator<=>(const Root&) const = default;
  Root negated() const { return {j, i}; }
};

std::string to_string(const Root& r);

// Rows of the closed-form tables: R(theta_1), R(theta_{1 1/(n+1)}), R(theta_{1 n/(n+1)}).
enum class TableRow { Head, Second, Tail };

std::string to_string(TableRow row);

struct SingularDirection {
  int n_plus_1 = 3;
  int ell = 0;
  double theta = 0.0;

  static SingularDirection make(int n_plus_1, int ell);
};

int require_rank(int n_plus_1);

std::vector<Root> all_roots(int n_plus_1);

// Sorted by (i, j).
std::vector<Root> supported_roots(int n_plus_1, int ell);

// Closed-form lists in table order. Needs c >= 1 except n+1 = 3, which has c = 0.
std::vector<Root> table_supported_roots(int n_plus_1, TableRow which);

// Union over ell = 0..n, sorted.
std::vector<Root> half_period_roots(int n_plus_1);

bool is_positive_system(std::span<const Root> positive, int n_plus_1);

enum class SimpleSystemFailure { None, DependentCandidate, NotPositive, NotInSpan, NegativeCoefficient };

std::string to_string(SimpleSystemFailure f);

struct SimpleSystemCertificate {
  SimpleSystemFailure failure = SimpleSystemFailure::None;
  std::string message;
  std::vector<std::pair<Root, std::vector<int>>> coefficients;

  bool ok() const { return failure == SimpleSystemFailure::None; }
};

SimpleSystemCertificate simple_system_check(std::span<const Root> candidate, std::span<const Root> positive);

enum class DiagramRow { Top, Bottom };

struct OrderDiagram {
  int n_plus_1 = 3;
  std::vector<int> order;
  std::vector<DiagramRow> rows;  // rows[p] is the row of order[p]

  std::vector<int> top_row() const;
  std::vector<int> bottom_row() const;
  int position(int index) const;
  // Consecutive (b, a) gives alpha_{a,b}; b on top means head, b below means tail.
  std::vector<Root> head_roots() const;
  std::vector<Root> tail_roots() const;
  std::vector<Root> simple_roots() const;
};

OrderDiagram order_diagram(int n_plus_1);

}  // namespace ttstokes
