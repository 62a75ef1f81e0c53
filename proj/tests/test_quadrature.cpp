#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hardylab/quadrature.hpp"

using namespace hardylab::quad;

TEST(Integrate, Polynomials) {
  auto r = integrate([](double x) { return x * x * x - 2 * x; }, -1.0, 3.0);
  EXPECT_NEAR(r.value, (81.0 - 1.0) / 4.0 - (9.0 - 1.0), 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(Integrate, GaussRuleIsExactThroughDegree29) {
  // a single panel suffices; the error estimate is the halving difference
  auto r = integrate([](double x) { return std::pow(x, 29); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, 1.0 / 30.0, 1e-15);
}

TEST(Integrate, SmoothOscillatory) {
  auto r = integrate([](double x) { return std::cos(40 * x); }, 0.0, 2.0);
  EXPECT_NEAR(r.value, std::sin(80.0) / 40.0, 1e-12);
}

TEST(Integrate, InverseSquareRootAtLeftEnd) {
  QuadConfig cfg;
  cfg.abs_tol = 1e-12;
  auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg, SingularEnd::left);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(Integrate, LogSingularityAtBothEnds) {
  auto f = [](double x) { return std::log(x) + std::log(1.0 - x); };
  auto r = integrate(f, 0.0, 1.0, {}, SingularEnd::both);
  EXPECT_NEAR(r.value, -2.0, 1e-9);
}

TEST(Integrate, RightEndGrading) {
  auto r = integrate([](double x) { return std::pow(1.0 - x, -0.25); }, 0.0, 1.0, {}, SingularEnd::right);
  EXPECT_NEAR(r.value, 4.0 / 3.0, 1e-9);
}

TEST(Integrate, EmptyAndReversedIntervals) {
  EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0);
  EXPECT_THROW(integrate([](double) { return 1.0; }, 2.0, 1.0), std::invalid_argument);
  QuadConfig bad;
  bad.endpoint_grading = 1.0;
  EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), std::invalid_argument);
}

TEST(Integrate, NonIntegrableIsReportedNotConverged) {
  QuadConfig cfg;
  cfg.max_panels = 2000;
  auto r = integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, cfg, SingularEnd::left);
  EXPECT_FALSE(r.converged);
}

TEST(Integrate, PiecesHonourKinks) {
  std::vector<double> b{-1.0, 0.0, 1.0};
  auto r = integrate_pieces([](double x) { return std::fabs(x); }, b);
  EXPECT_NEAR(r.value, 1.0, 1e-14);
}

TEST(Classify, GeometricConvergence) {
  std::vector<double> s;
  for (int j = 1; j <= 6; ++j) s.push_back(3.0 + std::pow(0.1, j));
  auto r = classify_sequence(s);
  EXPECT_EQ(r.classification, LimitClass::converged);
  EXPECT_NEAR(r.limit, 3.0, 1e-12);
}

TEST(Classify, AitkenSpeedsUpSlowGeometric) {
  std::vector<double> s;
  for (int j = 1; j <= 6; ++j) s.push_back(1.0 + std::pow(0.6, j));
  auto r = classify_sequence(s);
  EXPECT_EQ(r.classification, LimitClass::converged);
  EXPECT_NEAR(r.limit, 1.0, 1e-12);
}

TEST(Classify, ConstantTailCountsAsConverged) {
  std::vector<double> s{1.0, 2.0, 2.5, 2.5, 2.5, 2.5};
  auto r = classify_sequence(s);
  EXPECT_EQ(r.classification, LimitClass::converged);
  EXPECT_EQ(r.limit, 2.5);
}

TEST(Classify, LogarithmicGrowthDiverges) {
  std::vector<double> s;
  for (int j = 1; j <= 6; ++j) s.push_back(j * std::log(10.0));
  auto r = classify_sequence(s);
  EXPECT_EQ(r.classification, LimitClass::diverging);
  EXPECT_TRUE(std::isinf(r.limit));
}

TEST(Classify, NegativeDivergence) {
  std::vector<double> s{-1, -3, -9, -27, -81};
  auto r = classify_sequence(s);
  EXPECT_EQ(r.classification, LimitClass::diverging);
  EXPECT_LT(r.limit, 0.0);
}

TEST(Classify, BoundedOscillation) {
  std::vector<double> s;
  for (int j = 1; j <= 8; ++j) s.push_back(std::sin(1.3 * j));
  EXPECT_EQ(classify_sequence(s).classification, LimitClass::oscillating);
}

TEST(Classify, TooFewSamples) {
  std::vector<double> s{1.0, 2.0, NAN, 3.0};
  EXPECT_THROW(classify_sequence(s), InsufficientSamples);
}

TEST(Classify, NonFiniteSamplesAreDropped) {
  std::vector<double> s{1.1, 1.01, NAN, 1.001, 1.0001, 1.00001};
  auto r = classify_sequence(s);
  EXPECT_EQ(r.samples.size(), 5u);
  EXPECT_EQ(r.classification, LimitClass::converged);
}

TEST(Limits, IntegrateToLimitOfTailIntegral) {
  // int_eps^1 x^{-1/2} dx -> 2
  auto F = [](double e) {
    return integrate([](double x) { return 1.0 / std::sqrt(x); }, e, 1.0, {}, SingularEnd::left).value;
  };
  auto eps = decimal_cutoffs(8);
  auto r = integrate_to_limit(F, eps);
  EXPECT_EQ(r.classification, LimitClass::converged);
  EXPECT_NEAR(r.limit, 2.0, 1e-6);
}

TEST(Limits, RejectsBadSequences) {
  std::vector<double> up{0.1, 0.2, 0.01, 0.001};
  EXPECT_THROW(integrate_to_limit([](double) { return 0.0; }, up), std::invalid_argument);
  std::vector<double> neg{0.1, 0.01, 0.0, -1.0};
  EXPECT_THROW(integrate_to_limit([](double) { return 0.0; }, neg), std::invalid_argument);
  std::vector<double> flat{1.0, 1.0, 2.0, 3.0};
  EXPECT_THROW(limit_over_depths([](double) { return 0.0; }, flat), std::invalid_argument);
}

TEST(Limits, Sequences) {
  auto e = decimal_cutoffs();
  ASSERT_EQ(e.size(), 6u);
  EXPECT_DOUBLE_EQ(e.back(), 1e-6);
  auto s = deep_depths();
  ASSERT_EQ(s.size(), 8u);
  EXPECT_DOUBLE_EQ(s.back(), 1e8);
}

TEST(Limits, ToString) {
  EXPECT_EQ(to_string(LimitClass::oscillating), "oscillating");
  EXPECT_EQ(to_string(LimitClass::undetermined), "undetermined");
}
