#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "redundancy/ecdf.hpp"

namespace redundancy {
namespace {

TEST(EcdfTail, PointMass) {
  const std::vector<double> ones(200, 1.0);
  EXPECT_EQ(ecdf_tail(ones, 0.5).value, 1.0);
  EXPECT_EQ(ecdf_tail(ones, 1.5).value, 0.0);
  EXPECT_EQ(ecdf_tail(ones, 1.0).value, 0.0);  // strictly greater
}

TEST(EcdfTail, ExponentialWithinBand) {
  auto s = oracle::exp_samples(10000, 1.0, 17);
  std::sort(s.begin(), s.end());
  const auto est = ecdf_tail(s, 1.0, 0.01);
  EXPECT_NEAR(est.half_width, std::sqrt(std::log(200.0) / 20000.0), 1e-15);
  EXPECT_LE(est.lower, std::exp(-1.0));
  EXPECT_GE(est.upper, std::exp(-1.0));
}

TEST(EcdfTail, RejectsSmallSamples) {
  const std::vector<double> few(99, 1.0);
  EXPECT_THROW(ecdf_tail(few, 0.5), DomainError);
}

TEST(EcdfTail, BandClampedToUnitInterval) {
  const std::vector<double> ones(100, 1.0);
  const auto est = ecdf_tail(ones, 0.0);
  EXPECT_EQ(est.upper, 1.0);
  EXPECT_LT(est.lower, 1.0);
}

TEST(SupDistance, ExactForDiscreteCase) {
  // Samples {1,2,3,4}; theory tail 0.5 everywhere: the ECDF tail spans 1 .. 0.
  const std::vector<double> s{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(sup_distance(s, [](double) { return 0.5; }), 0.5);
  // Ties are treated as one jump.
  const std::vector<double> tied{1, 1, 2, 2};
  EXPECT_DOUBLE_EQ(sup_distance(tied, [](double t) { return t < 1.5 ? 0.5 : 0.0; }), 0.5);
}

TEST(SupDistance, ExponentialSampleIsClose) {
  auto s = oracle::exp_samples(20000, 2.0, 3);
  std::sort(s.begin(), s.end());
  EXPECT_LT(sup_distance(s, [](double t) { return std::exp(-2.0 * t); }), dkw_half_width(s.size(), 0.01));
  EXPECT_GT(sup_distance(s, [](double t) { return std::exp(-1.5 * t); }), 0.05);
}

TEST(KolmogorovSurvival, KnownQuantiles) {
  EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 1e-4);
  EXPECT_NEAR(kolmogorov_survival(1.6276), 0.01, 1e-4);
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
}

TEST(KsTwoSample, SameDistributionPassesDifferentFails) {
  auto a = oracle::exp_samples(20000, 1.0, 1);
  auto b = oracle::exp_samples(20000, 1.0, 2);
  auto c = oracle::exp_samples(20000, 1.1, 3);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::sort(c.begin(), c.end());
  EXPECT_GT(ks_two_sample(a, b).p_value, 0.01);
  EXPECT_LT(ks_two_sample(a, c).p_value, 1e-6);
  EXPECT_EQ(ks_two_sample(a, a).statistic, 0.0);
}

TEST(KsTwoSample, FalseRejectionRateNearNominal) {
  int rejections = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto a = oracle::exp_samples(500, 1.0, 1000 + seed);
    auto b = oracle::exp_samples(700, 1.0, 5000 + seed);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (ks_two_sample(a, b).p_value < 0.05) ++rejections;
  }
  EXPECT_LE(rejections, 22);  // 10 expected
}

TEST(EcdfCurve, MatchesPointwiseEstimates) {
  auto s = oracle::exp_samples(500, 1.0, 9);
  std::sort(s.begin(), s.end());
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  const auto curve = ecdf_curve(s, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(curve.values[i], ecdf_tail(s, grid[i]).value);
  EXPECT_TRUE(curve.is_valid_tail());
}

}  // namespace
}  // namespace redundancy
