#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "redundancy/meanfield.hpp"

namespace redundancy {
namespace {

SystemParams mds(double lambda, int n, int m) { return SystemParams{lambda, n, m, 1, n + m}; }

TEST(OdeRhs, ZeroIsAbsorbing) {
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m) EXPECT_EQ(ode_rhs(mds(0.5, n, m), 0.0), 0.0);
}

TEST(OdeRhs, ReducesToReplicationOde) {
  for (int d = 2; d <= 6; ++d)
    for (double lambda : {0.1, 0.5, 0.9})
      for (double q = 0.0; q <= 1.0; q += 0.05)
        EXPECT_NEAR(ode_rhs(mds(lambda, 1, d - 1), q), -q + lambda * std::pow(q, d), 1e-15);
  EXPECT_NEAR(ode_rhs(mds(0.5, 1, 1), 1.0), -0.5, 1e-15);
}

TEST(OdeRhs, NoRedundancyGivesMM1) {
  for (int n = 1; n <= 6; ++n)
    for (double q = 0.0; q <= 1.0; q += 0.1) EXPECT_NEAR(ode_rhs(mds(0.4, n, 0), q), -0.6 * q, 1e-14);
}

TEST(OdeRhs, StableFormMatchesAlternating) {
  for (int n = 1; n <= 20; ++n)
    for (int m = 1; n + m <= 25; ++m)
      for (double q = 0.0; q <= 1.0; q += 0.02)
        ASSERT_NEAR(ode_rhs(mds(0.5, n, m), q), ode_rhs_alternating(mds(0.5, n, m), q), 1e-10)
            << n << "," << m << "," << q;
}

TEST(OdeRhs, EqualsMinusOnePlusLambdaAtOne) {
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m) EXPECT_NEAR(ode_rhs(mds(0.3, n, m), 1.0), -0.7, 1e-13);
}

TEST(OdeRhs, Errors) {
  EXPECT_THROW(ode_rhs(mds(0.5, 2, 2), 1.5), DomainError);
  EXPECT_THROW(ode_rhs_alternating(mds(0.5, 2, 0), 0.5), DomainError);
}

TEST(SolveVirtualTail, ReplicationClosedForm) {
  const auto sol = solve_virtual_tail(MeanFieldProblem{mds(0.5, 1, 1), 15.0, 1e-3});
  EXPECT_EQ(sol.virtual_tail.values.front(), 1.0);
  EXPECT_NEAR(sol.virtual_tail.at(std::log(3.0)), 0.5, 1e-6);
  double sup = 0.0;
  for (std::size_t i = 0; i < sol.virtual_tail.size(); ++i)
    sup = std::max(sup, std::abs(sol.virtual_tail.values[i] -
                                 oracle::replication_virtual_tail(0.5, 2, sol.virtual_tail.times[i])));
  EXPECT_LT(sup, 1e-9);
}

TEST(SolveVirtualTail, FrozenReferenceSolutions) {
  // Independent DOP853 solves of the alternating-form ODE at rtol 1e-13.
  struct Case {
    int n, m;
    double lambda;
    double v[4];
    double c[4];
  };
  const double times[4] = {0.5, 1.0, 2.0, 5.0};
  const Case cases[] = {
      {3, 2, 0.5, {0.7603786783449359, 0.5452059281040084, 0.2348601852879144, 0.012176703454974635},
       {0.9071263736501145, 0.5843003391955721, 0.08819645502253856, 1.7726491714708375e-05}},
      {3, 3, 0.5, {0.7507452480969602, 0.5167473496193677, 0.20384753795238822, 0.01020884456669528},
       {0.8317436523994393, 0.37565310093673804, 0.018170613633035064, 1.6027873050138186e-07}},
      {3, 6, 0.5, {0.7221102450759199, 0.45707562538177193, 0.1689293175655626, 0.008410650937922938},
       {0.5229135419110567, 0.05440742255684457, 0.00010268681751346588, 1.056073833837207e-13}},
      {2, 2, 0.3, {0.684880646346057, 0.4444603697059825, 0.17097960390851713, 0.00858365740398622},
       {0.6249485008569596, 0.23413162585243202, 0.017429803383458967, 2.5134613021949474e-06}},
      {4, 1, 0.7, {0.8545923113838054, 0.7180459432912241, 0.47167667421766724, 0.055711711143078754},
       {0.9980247981154382, 0.9755280063788163, 0.7750936064333732, 0.027721949568378028}},
  };
  for (const auto& c : cases) {
    const auto sol = solve_virtual_tail(MeanFieldProblem{mds(c.lambda, c.n, c.m), 15.0, 1e-3});
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(sol.virtual_tail.at(times[i]), c.v[i], 1e-9) << c.n << "," << c.m << " t=" << times[i];
      EXPECT_NEAR(sol.batch_tail.at(times[i]) / c.c[i], 1.0, 1e-7) << c.n << "," << c.m << " t=" << times[i];
    }
  }
}

TEST(SolveVirtualTail, BatchTailDecreasesAndFallsBelowVirtual) {
  const auto sol = solve_virtual_tail(MeanFieldProblem{mds(0.5, 3, 3), 15.0, 1e-3});
  EXPECT_EQ(sol.batch_tail.values.front(), 1.0);
  for (std::size_t i = 1; i < sol.batch_tail.size(); ++i) {
    ASSERT_LE(sol.batch_tail.values[i], sol.batch_tail.values[i - 1]);
    if (sol.batch_tail.times[i] >= 2.0) {
      ASSERT_LT(sol.batch_tail.values[i], sol.virtual_tail.values[i]) << "t=" << sol.batch_tail.times[i];
    }
  }
}

TEST(SolveVirtualTail, CompositionHoldsPointwise) {
  const MeanFieldProblem problem{mds(0.4, 4, 3), 12.0, 2e-3};
  const auto sol = solve_virtual_tail(problem);
  ASSERT_EQ(sol.batch_tail.times, sol.virtual_tail.times);
  for (std::size_t i = 0; i < sol.batch_tail.size(); ++i)
    EXPECT_EQ(sol.batch_tail.values[i], order_stat_tail(4, 3, sol.virtual_tail.values[i]));
}

TEST(SolveVirtualTail, MonotoneInUnitInterval) {
  for (double lambda : {0.2, 0.5, 0.8})
    for (int n : {1, 2, 3, 5})
      for (int m : {0, 1, 2, 4, 6}) {
        if (lambda * (n + m) / n >= 1.0) continue;
        const auto sol = solve_virtual_tail(MeanFieldProblem{mds(lambda, n, m), 15.0, 5e-3});
        EXPECT_TRUE(sol.virtual_tail.is_valid_tail()) << lambda << " " << n << " " << m;
        EXPECT_TRUE(sol.batch_tail.is_valid_tail()) << lambda << " " << n << " " << m;
      }
}

TEST(SolveVirtualTail, StepHalvingShowsFourthOrder) {
  const auto at = [](double step) {
    return solve_virtual_tail(MeanFieldProblem{mds(0.5, 3, 3), 4.0, step}).virtual_tail.at(4.0);
  };
  const double coarse = at(0.2), mid = at(0.1), fine = at(0.05);
  const double order = std::log2(std::abs(coarse - mid) / std::abs(mid - fine));
  EXPECT_GE(order, 3.5);
}

TEST(SolveVirtualTail, GridLandsOnHorizon) {
  const auto sol = solve_virtual_tail(MeanFieldProblem{mds(0.5, 2, 2), 10.05, 0.1});
  EXPECT_DOUBLE_EQ(sol.virtual_tail.times.back(), 10.05);
  EXPECT_TRUE(sol.virtual_tail.is_valid_tail());
}

TEST(MeanFieldProblem, Validation) {
  EXPECT_THROW((MeanFieldProblem{mds(0.5, 3, 3), 15.0, 0.0}.validate()), ValidationError);
  EXPECT_THROW((MeanFieldProblem{mds(0.5, 3, 3), 2.0, 1e-3}.validate()), ValidationError);
  EXPECT_THROW((MeanFieldProblem{mds(1.0, 3, 3), 15.0, 1e-3}.validate()), ValidationError);
  EXPECT_THROW((MeanFieldProblem{mds(0.5, 20, 11), 15.0, 1e-3}.validate()), ValidationError);
  EXPECT_NO_THROW((MeanFieldProblem{mds(0.5, 3, 3), 2.5, 1e-3}.validate()));
}

TEST(MeanFieldProblem, LoadWarning) {
  EXPECT_FALSE((MeanFieldProblem{mds(0.5, 3, 2), 15.0, 1e-3}.load_warning()));
  EXPECT_TRUE((MeanFieldProblem{mds(0.5, 3, 3), 15.0, 1e-3}.load_warning()));
}

TEST(TailExponent, SyntheticExponential) {
  TailCurve c;
  for (double t = 0.0; t <= 10.0 + 1e-12; t += 0.01) {
    c.times.push_back(t);
    c.values.push_back(std::exp(-2.0 * t));
  }
  EXPECT_NEAR(tail_exponent(c, 0.0, 10.0), -2.0, 1e-9);
}

TEST(TailExponent, ReplicationVirtualAndBatch) {
  const auto sol = solve_virtual_tail(MeanFieldProblem{mds(0.5, 1, 1), 15.0, 1e-3});
  const double v = tail_exponent(sol.virtual_tail, 8.0, 12.0);
  const double b = tail_exponent(sol.batch_tail, 8.0, 12.0);
  EXPECT_GE(v, -1.05);
  EXPECT_LE(v, -0.95);
  EXPECT_GE(b, -2.1);
  EXPECT_LE(b, -1.9);
}

TEST(TailExponent, RejectsBadWindows) {
  TailCurve c{{0.0, 1.0, 2.0, 3.0}, {1.0, 0.5, 0.0, 0.0}};
  EXPECT_THROW(tail_exponent(c, 1.0, 3.0), DomainError);
  EXPECT_THROW(tail_exponent(c, 2.5, 5.0), DomainError);
  EXPECT_THROW(tail_exponent(c, 0.1, 0.9), DomainError);
  EXPECT_NEAR(tail_exponent(c, 0.0, 1.0), std::log(0.5), 1e-15);
}

TEST(Rk4, IntegratesExponentialGrowthAccurately) {
  double final_value = 0.0;
  integrate_fixed([](double, double y) { return y; }, 1.0, 0.0, 1.0, 0.01,
                  [&](double, double& y) {
                    final_value = y;
                    return true;
                  });
  EXPECT_NEAR(final_value, std::exp(1.0), 1e-9);
}

}  // namespace
}  // namespace redundancy
