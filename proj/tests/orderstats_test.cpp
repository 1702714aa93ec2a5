#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "redundancy/orderstats.hpp"

namespace redundancy {
namespace {

TEST(RepSingleTail, ValueAtZeroIsOne) { EXPECT_DOUBLE_EQ(rep_single_tail(0.5, 2, 0.0), 1.0); }

TEST(RepSingleTail, HandEvaluatedPoint) {
  // Denominator 0.5 + 0.5 * 3 = 2, squared.
  EXPECT_NEAR(rep_single_tail(0.5, 2, std::log(3.0)), 0.25, 1e-15);
}

TEST(RepSingleTail, EmptySystemLimitIsMinOfExponentials) {
  for (int d = 2; d <= 5; ++d)
    for (double t : {0.1, 1.0, 3.0}) EXPECT_NEAR(rep_single_tail(1e-12, d, t) / std::exp(-d * t), 1.0, 1e-9);
}

TEST(RepSingleTail, MonotoneAndStableForLargeT) {
  double prev = 1.0;
  for (double t = 0.0; t < 400.0; t += 0.5) {
    const double v = rep_single_tail(0.7, 3, t);
    EXPECT_LE(v, prev);
    EXPECT_GE(v, 0.0);
    prev = v;
  }
  // (1-λ)^{-d/(d-1)} e^{-d t} asymptotically.
  EXPECT_NEAR(rep_single_tail(0.5, 3, 30.0) / (std::pow(0.5, -1.5) * std::exp(-90.0)), 1.0, 1e-9);
}

TEST(RepSingleTail, RejectsDegenerateAndUnstable) {
  EXPECT_THROW(rep_single_tail(0.5, 1, 1.0), DomainError);
  EXPECT_THROW(rep_single_tail(1.0, 2, 1.0), DomainError);
  EXPECT_THROW(rep_single_tail(1.5, 2, 1.0), DomainError);
  EXPECT_THROW(rep_single_tail(0.5, 2, -1.0), DomainError);
  try {
    rep_single_tail(0.5, 1, 1.0);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("undefined for d=1"), std::string::npos);
  }
}

TEST(RepBatchTail, Examples) {
  EXPECT_DOUBLE_EQ(rep_batch_tail(0.5, 3, 3, 0.0), 1.0);
  EXPECT_NEAR(rep_batch_tail(0.5, 1, 2, std::log(3.0)), 0.25, 1e-15);
  EXPECT_NEAR(rep_batch_tail(0.5, 2, 2, std::log(3.0)), 0.4375, 1e-15);
}

TEST(RepBatchTail, SingleJobBatchEqualsSingleTail) {
  for (double lambda : {0.2, 0.5, 0.9})
    for (int d = 2; d <= 4; ++d)
      for (double t = 0.0; t < 10.0; t += 0.37)
        EXPECT_EQ(rep_batch_tail(lambda, 1, d, t), rep_single_tail(lambda, d, t));
}

TEST(RepBatchTail, MatchesLiteralFormWhereThatIsAccurate) {
  for (double t = 0.0; t < 4.0; t += 0.1) {
    const double x = rep_single_tail(0.5, 3, t);
    EXPECT_NEAR(rep_batch_tail(0.5, 3, 3, t), 1.0 - std::pow(1.0 - x, 3), 1e-14);
  }
}

TEST(RepBatchTail, NoUnderflowDeepInTheTail) {
  const double x = rep_single_tail(0.5, 3, 13.0);
  EXPECT_GT(rep_batch_tail(0.5, 3, 3, 13.0), 0.0);
  EXPECT_NEAR(rep_batch_tail(0.5, 3, 3, 13.0) / (3.0 * x), 1.0, 1e-12);
}

TEST(OrderStatTail, Examples) {
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m) EXPECT_DOUBLE_EQ(order_stat_tail(n, m, 1.0), 1.0);
  for (int m = 0; m <= 6; ++m)
    for (double q : {0.0, 0.13, 0.5, 0.99}) EXPECT_NEAR(order_stat_tail(1, m, q), std::pow(q, m + 1), 1e-15);
  EXPECT_NEAR(order_stat_tail(2, 1, 0.5), 0.5, 1e-15);  // 3q^2 - 2q^3
}

TEST(OrderStatTail, MatchesSubsetEnumeration) {
  for (int n = 1; n <= 8; ++n)
    for (int m = 0; m + n <= 14; ++m)
      for (double q = 0.0; q <= 1.0; q += 0.0625)
        EXPECT_NEAR(order_stat_tail(n, m, q), oracle::order_stat_tail_enumerated(n, m, q), 1e-13)
            << n << "," << m << "," << q;
}

TEST(OrderStatTail, FrozenHighPrecisionValues) {
  // 50-digit evaluations of the alternating sum.
  EXPECT_NEAR(order_stat_tail(3, 3, 0.9), 0.98415, 1e-14);
  EXPECT_NEAR(order_stat_tail(10, 10, 0.37), 0.07753999357724510971, 1e-14);
  EXPECT_NEAR(order_stat_tail(3, 3, 0.001), 1.4976010000000001247e-11, 1e-24);
}

TEST(OrderStatTail, DomainErrors) {
  EXPECT_THROW(order_stat_tail(2, 1, -0.1), DomainError);
  EXPECT_THROW(order_stat_tail(2, 1, 1.1), DomainError);
  EXPECT_THROW(order_stat_tail(2, 1, std::nan("")), DomainError);
  EXPECT_THROW(order_stat_tail(0, 1, 0.5), DomainError);
  EXPECT_THROW(order_stat_tail(1, -1, 0.5), DomainError);
  EXPECT_THROW(order_stat_tail(16, 15, 0.5), DomainError);
  EXPECT_NO_THROW(order_stat_tail(15, 15, 0.5));
}

TEST(OrderStatTail, MonotoneInQAndInN) {
  for (int total = 2; total <= 20; ++total) {
    for (int n = 1; n <= total; ++n) {
      double prev = 0.0;
      for (double q = 0.0; q <= 1.0; q += 0.01) {
        const double v = order_stat_tail(n, total - n, q);
        EXPECT_GE(v, prev - 1e-15);
        prev = v;
        if (n > 1) {
          EXPECT_GE(order_stat_tail(n, total - n, q) + 1e-15, order_stat_tail(n - 1, total - n + 1, q));
        }
      }
    }
  }
}

TEST(OrderStatTail, ReplicationIsCodingWithOneJob) {
  for (int d = 1; d <= 10; ++d)
    for (double q = 0.0; q <= 1.0; q += 0.05) EXPECT_EQ(order_stat_tail(1, d - 1, q), std::pow(q, d));
}

TEST(OrderStatTailAlternating, Examples) {
  EXPECT_NEAR(order_stat_tail_alternating(1, 2, 0.3), 0.027, 1e-16);
  EXPECT_NEAR(order_stat_tail_alternating(2, 1, 0.5), 0.5, 1e-16);
  EXPECT_NEAR(order_stat_tail_alternating(3, 3, 0.9), order_stat_tail(3, 3, 0.9), 1e-10);
  EXPECT_THROW(order_stat_tail_alternating(2, 1, 2.0), DomainError);
}

TEST(OrderStatTailAlternating, AgreesWithStableFormAcrossGrid) {
  for (int n = 1; n <= 25; ++n)
    for (int m = 0; n + m <= 25; ++m)
      for (int i = 0; i <= 100; ++i) {
        const double q = i / 100.0;
        ASSERT_NEAR(order_stat_tail_alternating(n, m, q), order_stat_tail(n, m, q), 1e-10) << n << "," << m << "," << q;
      }
}

TEST(OrderStatTailAlternating, CoefficientsSumToOne) {
  for (int n = 1; n <= 25; ++n)
    for (int m = 0; n + m <= 25; ++m) EXPECT_NEAR(order_stat_tail_alternating(n, m, 1.0), 1.0, 1e-12);
}

TEST(MdsLeadingTerm, Examples) {
  for (double q : {0.0, 0.2, 0.9}) EXPECT_DOUBLE_EQ(mds_leading_term(1, 0, q), q);
  const double q = 0.01;
  EXPECT_NEAR(mds_leading_term(2, 1, q), 3 * q * q, 1e-18);
  EXPECT_LE(std::abs(mds_leading_term(2, 1, q) - order_stat_tail(2, 1, q)), 2 * q * q * q + 1e-18);
  EXPECT_NEAR(mds_leading_term(3, 3, 0.001), 15 * std::pow(0.001, 4), 1e-25);
  EXPECT_THROW(mds_leading_term(3, 3, -0.5), DomainError);
}

TEST(MdsLeadingTerm, RatioToExactTendsToOne) {
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m) {
      double prev_gap = 1e9;
      for (double q : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double gap = std::abs(mds_leading_term(n, m, q) / order_stat_tail(n, m, q) - 1.0);
        EXPECT_LE(gap, prev_gap + 1e-12);
        prev_gap = gap;
      }
      EXPECT_LT(prev_gap, 1e-2);
    }
}

TEST(RepHeuristicTail, Examples) {
  for (double f : {0.0, 0.3, 1.0}) EXPECT_DOUBLE_EQ(rep_heuristic_tail(1, 1, f), f);
  EXPECT_NEAR(rep_heuristic_tail(2, 2, 0.5), 0.4375, 1e-15);
  EXPECT_NEAR(rep_heuristic_tail(3, 3, 0.01) / 3e-6, 1.0, 1e-5);
  EXPECT_THROW(rep_heuristic_tail(2, 2, 1.5), DomainError);
}

TEST(LeadingTerms, MdsBeatsReplicationWhenRedundancyAtLeastD) {
  EXPECT_LE(mds_leading_term(3, 3, 1e-3), rep_heuristic_tail(3, 3, 1e-3));
}

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(30, 15), 155117520u);
  EXPECT_EQ(binomial(4, 5), 0u);
  EXPECT_EQ(binomial(0, 0), 1u);
}

}  // namespace
}  // namespace redundancy
