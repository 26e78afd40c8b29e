#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "ttstokes/roots.hpp"

using namespace ttstokes;

namespace {

std::vector<Root> sorted(std::vector<Root> r) {
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST(SupportedRoots, MatchesExactAngleArithmetic) {
  for (int n1 = 3; n1 <= 12; ++n1)
    for (int ell = 0; ell < 2 * n1; ++ell) EXPECT_EQ(supported_roots(n1, ell), oracle::supported_roots(n1, ell)) << n1 << " " << ell;
}

TEST(SupportedRoots, EveryRootAppearsOnceInAFullPeriod) {
  for (int n1 = 3; n1 <= 12; ++n1) {
    std::map<Root, int> seen;
    for (int ell = 0; ell < 2 * n1; ++ell)
      for (const Root& r : supported_roots(n1, ell)) ++seen[r];
    EXPECT_EQ(seen.size(), all_roots(n1).size());
    for (const auto& [r, count] : seen) EXPECT_EQ(count, 1) << to_string(r);
  }
}

TEST(SupportedRoots, HalfPeriodShiftNegates) {
  for (int n1 = 3; n1 <= 12; ++n1)
    for (int ell = 0; ell < n1; ++ell) {
      std::vector<Root> neg;
      for (const Root& r : supported_roots(n1, ell)) neg.push_back(r.negated());
      EXPECT_EQ(sorted(neg), supported_roots(n1, ell + n1));
    }
}

TEST(TableRoots, FourByFour) {
  const std::vector<std::vector<Root>> table = {{{1, 0}, {2, 3}}, {{1, 3}}, {{0, 3}, {1, 2}}, {{0, 2}}};
  for (int ell = 0; ell < 4; ++ell) EXPECT_EQ(supported_roots(4, ell), sorted(table[static_cast<size_t>(ell)]));
}

TEST(TableRoots, FiveByFive) {
  const std::vector<std::vector<Root>> table = {
      {{2, 0}, {3, 4}}, {{1, 0}, {2, 4}}, {{1, 4}, {2, 3}}, {{0, 4}, {1, 3}}, {{0, 3}, {1, 2}}};
  for (int ell = 0; ell < 5; ++ell) EXPECT_EQ(supported_roots(5, ell), sorted(table[static_cast<size_t>(ell)]));
}

TEST(TableRoots, ClosedFormsAgreeWithAngles) {
  for (int n1 = 3; n1 <= 12; ++n1) {
    EXPECT_EQ(sorted(table_supported_roots(n1, TableRow::Head)), supported_roots(n1, 0)) << n1;
    EXPECT_EQ(sorted(table_supported_roots(n1, TableRow::Second)), supported_roots(n1, 1)) << n1;
    EXPECT_EQ(sorted(table_supported_roots(n1, TableRow::Tail)), supported_roots(n1, n1 - 1)) << n1;
  }
}

TEST(TableRoots, SmallRankIsRejected) {
  EXPECT_THROW(supported_roots(2, 0), DomainError);
  EXPECT_THROW(table_supported_roots(1, TableRow::Head), DomainError);
}

TEST(PositiveSystem, HalfPeriodIsPositive) {
  for (int n1 = 3; n1 <= 12; ++n1) {
    const std::vector<Root> pos = half_period_roots(n1);
    EXPECT_EQ(static_cast<int>(pos.size()), n1 * (n1 - 1) / 2);
    EXPECT_TRUE(is_positive_system(pos, n1));
  }
}

TEST(PositiveSystem, RejectsMixedSigns) {
  std::vector<Root> pos = half_period_roots(4);
  pos.back() = pos.back().negated();
  // still an ordering: 1 > 0 > 3 > 2
  EXPECT_TRUE(is_positive_system(pos, 4));
  pos = half_period_roots(4);
  std::replace(pos.begin(), pos.end(), Root{0, 3}, Root{3, 0});
  // 0 > 2 > 3 > 0
  EXPECT_FALSE(is_positive_system(pos, 4));
}

TEST(SimpleRoots, HeadAndTailFormASimpleSystem) {
  for (int n1 = 3; n1 <= 12; ++n1) {
    std::vector<Root> simple = table_supported_roots(n1, TableRow::Head);
    for (const Root& r : table_supported_roots(n1, TableRow::Tail)) simple.push_back(r);
    EXPECT_EQ(static_cast<int>(simple.size()), n1 - 1);
    const SimpleSystemCertificate cert = simple_system_check(simple, half_period_roots(n1));
    EXPECT_TRUE(cert.ok()) << n1 << ": " << cert.message;
    EXPECT_EQ(cert.coefficients.size(), half_period_roots(n1).size());
    for (const auto& [root, coeffs] : cert.coefficients)
      for (int c : coeffs) EXPECT_GE(c, 0);
  }
}

TEST(SimpleRoots, CertificateNamesTheFailure) {
  const std::vector<Root> pos = half_period_roots(4);
  const std::vector<Root> dependent = {{1, 0}, {0, 2}, {1, 2}};
  EXPECT_EQ(simple_system_check(dependent, pos).failure, SimpleSystemFailure::DependentCandidate);
  const std::vector<Root> negative = {{0, 1}, {2, 3}, {0, 2}};
  EXPECT_EQ(simple_system_check(negative, pos).failure, SimpleSystemFailure::NotPositive);
  const std::vector<Root> wrong = {{1, 3}, {2, 3}, {0, 2}};
  // (1,0) = (1,3) - (2,3) - (0,2)
  EXPECT_EQ(simple_system_check(wrong, pos).failure, SimpleSystemFailure::NegativeCoefficient);
}

TEST(OrderDiagram, PrintedExamples) {
  const OrderDiagram d4 = order_diagram(4);
  EXPECT_EQ(d4.top_row(), (std::vector<int>{3, 0}));
  EXPECT_EQ(d4.bottom_row(), (std::vector<int>{2, 1}));
  EXPECT_EQ(d4.simple_roots(), sorted({{1, 0}, {2, 3}, {0, 2}}));

  const OrderDiagram d5 = order_diagram(5);
  EXPECT_EQ(d5.top_row(), (std::vector<int>{4, 0, 1}));
  EXPECT_EQ(d5.bottom_row(), (std::vector<int>{3, 2}));
  EXPECT_EQ(d5.simple_roots(), sorted({{2, 0}, {3, 4}, {0, 3}, {1, 2}}));
}

TEST(OrderDiagram, SplitsIntoHeadAndTail) {
  for (int n1 = 3; n1 <= 12; ++n1) {
    const OrderDiagram d = order_diagram(n1);
    std::vector<int> order = d.order;
    std::sort(order.begin(), order.end());
    for (int i = 0; i < n1; ++i) EXPECT_EQ(order[static_cast<size_t>(i)], i);
    EXPECT_EQ(sorted(d.head_roots()), sorted(table_supported_roots(n1, TableRow::Head))) << n1;
    EXPECT_EQ(sorted(d.tail_roots()), sorted(table_supported_roots(n1, TableRow::Tail))) << n1;
    EXPECT_THROW(d.position(n1), DomainError);
  }
}

TEST(SingularDirection, Angles) {
  EXPECT_DOUBLE_EQ(SingularDirection::make(4, 0).theta, -std::numbers::pi / 4);
  EXPECT_DOUBLE_EQ(SingularDirection::make(4, 1).theta, -std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(SingularDirection::make(5, 0).theta, -std::numbers::pi / 10);
  EXPECT_DOUBLE_EQ(SingularDirection::make(5, 1).theta, -3 * std::numbers::pi / 10);
}
