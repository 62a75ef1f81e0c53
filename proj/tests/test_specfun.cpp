#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hardylab/specfun.hpp"

using namespace hardylab::specfun;

namespace {

// Plain double-precision power series, good to ~1e-15 for x <= 4.
double series_j0(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -(x * x / 4.0) / (double(k) * k);
    sum += term;
  }
  return sum;
}

double bisect_j0_zero(double a, double b) {
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    ((series_j0(a) < 0) == (series_j0(m) < 0) ? a : b) = m;
  }
  return 0.5 * (a + b);
}

struct Sample {
  double nu;
  double x;
  double j;
};

// mpmath, 30 digits
const Sample kTable[] = {
    {0, 0.5, 0.9384698072408129},    {0, 3.0, -0.26005195490193344},   {0, 12.0, 0.047689310796833537},
    {0, 17.5, -0.10311039822868592}, {0, 18.5, 0.077164821422554699},  {0, 30.0, -0.086367983581040211},
    {0, 60.0, -0.09147180408906187}, {1, 0.5, 0.24226845767487389},    {1, 3.0, 0.33905895852593646},
    {1, 12.0, -0.22344710449062761}, {1, 17.5, -0.16341996942575491},  {1, 18.5, -0.16663364001001603},
    {1, 30.0, -0.11875106261662294}, {1, 60.0, 0.046598383758166318},  {2, 0.5, 0.030604023458682641},
    {2, 3.0, 0.48609126058589108},   {2, 12.0, -0.084930494878604805}, {2, 18.5, -0.095179268991205081},
    {2, 60.0, 0.093025083547667413}, {0.5, 0.5, 0.54097378993452809}, {0.5, 12.0, -0.12358853595594194},
    {0.5, 30.0, -0.14392965337039989}, {1.5, 3.0, 0.47771821508709177}, {1.5, 17.5, -0.052487237782025104},
    {1.5, 18.5, -0.17772013825957862}, {2.5, 0.5, 0.0092364078193797245}, {2.5, 60.0, 0.036276530818286875},
};

}  // namespace

TEST(BesselJ, MatchesReferenceTable) {
  for (const auto& s : kTable) {
    EXPECT_NEAR(bessel_j(s.nu, s.x), s.j, 5e-13) << "nu=" << s.nu << " x=" << s.x;
  }
}

TEST(BesselJ, AgreesWithPlainSeries) {
  for (double x = 0.0; x <= 4.0; x += 0.125) EXPECT_NEAR(bessel_j(0.0, x), series_j0(x), 2e-15);
}

TEST(BesselJ, ValuesAtZero) {
  EXPECT_EQ(bessel_j(0.0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(1.0, 0.0), 0.0);
  EXPECT_EQ(bessel_j(0.7, 0.0), 0.0);
}

TEST(BesselJ, HalfIntegerClosedForm) {
  for (double x : {0.3, 2.0, 9.0, 25.0, 80.0}) {
    EXPECT_NEAR(bessel_j(0.5, x), std::sqrt(2.0 / (std::numbers::pi * x)) * std::sin(x), 1e-13);
  }
}

TEST(BesselJ, SwitchIsContinuous) {
  const double x = 18.0;
  for (double nu : {0.0, 1.0, 2.0}) {
    EXPECT_NEAR(bessel_j(nu, std::nextafter(x, 0.0)), bessel_j(nu, std::nextafter(x, 100.0)), 1e-12);
  }
}

TEST(BesselJ, RecurrenceHolds) {
  // J_{nu-1} + J_{nu+1} = 2 nu / x J_nu
  for (double x : {0.7, 5.0, 15.0, 22.0, 40.0}) {
    for (double nu : {1.0, 1.5, 2.0}) {
      EXPECT_NEAR(bessel_j(nu - 1, x) + bessel_j(nu + 1, x), 2 * nu / x * bessel_j(nu, x), 2e-12);
    }
  }
}

TEST(BesselJ, RejectsBadInput) {
  EXPECT_THROW(bessel_j(-1.0, 1.0), std::domain_error);
  EXPECT_THROW(bessel_j(0.0, -1.0), std::domain_error);
  EXPECT_THROW(bessel_j(0.0, NAN), std::domain_error);
}

TEST(BesselJDeriv, AtFirstZero) {
  EXPECT_NEAR(bessel_j_deriv(0.0, 2.404825557695773), -0.51914749728946679, 1e-13);
  const double h = 1e-6;
  const double x = 2.404825557695773;
  EXPECT_NEAR(bessel_j_deriv(0.0, x), (bessel_j(0.0, x + h) - bessel_j(0.0, x - h)) / (2 * h), 1e-9);
}

TEST(BesselJDeriv, CentralDifference) {
  const double h = 1e-5;
  for (double nu : {0.5, 1.0, 2.5}) {
    for (double x : {0.4, 6.0, 19.0, 45.0}) {
      EXPECT_NEAR(bessel_j_deriv(nu, x), (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2 * h), 1e-8);
    }
  }
}

TEST(BesselJDeriv, AtOrigin) {
  EXPECT_EQ(bessel_j_deriv(0.0, 0.0), 0.0);
  EXPECT_EQ(bessel_j_deriv(1.0, 0.0), 0.5);
  EXPECT_EQ(bessel_j_deriv(3.0, 0.0), 0.0);
  EXPECT_THROW(bessel_j_deriv(0.5, 0.0), std::domain_error);
}

TEST(BesselZero, FirstZeroAgainstBisection) {
  const double z = bessel_zero(0.0, 1);
  EXPECT_NEAR(z, bisect_j0_zero(2.0, 3.0), 1e-13);
  EXPECT_NEAR(z, 2.404825557695773, 1e-13);
  EXPECT_NEAR(bessel_j(0.0, z), 0.0, 1e-12);
}

TEST(BesselZero, ReferenceZeros) {
  struct Z {
    double nu;
    int k;
    double z;
  };
  const Z zs[] = {
      {0, 2, 5.5200781102863106},  {0, 3, 8.6537279129110122},  {0, 5, 14.930917708487786},
      {0, 10, 30.634606468431975}, {0, 20, 62.04846919022717},  {1, 1, 3.8317059702075123},
      {1, 2, 7.0155866698156188},  {1, 10, 32.189679910974404}, {1.5, 1, 4.4934094579090642},
      {1.5, 5, 17.220755271930769}, {1.5, 20, 64.387119590557414},
  };
  for (const auto& z : zs) EXPECT_NEAR(bessel_zero(z.nu, z.k), z.z, 2e-14 * z.z) << z.nu << " " << z.k;
}

TEST(BesselZero, HalfOrderZerosAreMultiplesOfPi) {
  for (int k = 1; k <= 25; ++k) EXPECT_NEAR(bessel_zero(0.5, k), k * std::numbers::pi, 1e-12 * k);
}

TEST(BesselZero, InterlacingAndIncreasing) {
  for (int k = 1; k <= 30; ++k) {
    const double a = bessel_zero(0.0, k);
    const double b = bessel_zero(1.0, k);
    const double c = bessel_zero(0.0, k + 1);
    EXPECT_LT(a, b);
    EXPECT_LT(b, c);
  }
}

TEST(BesselZero, SmallOrdersApproachOrderZero) {
  const double z0 = bessel_zero(0.0, 1);
  double prev = bessel_zero(1e-2, 1);
  for (double m : {1e-3, 1e-4, 1e-6}) {
    const double z = bessel_zero(m, 1);
    EXPECT_LT(z, prev);
    EXPECT_GT(z, z0);
    prev = z;
  }
  // d z / d m at m = 0 is about 1.5429
  EXPECT_NEAR((prev - z0) / 1e-6, 1.5429, 1e-3);
}

TEST(BesselZero, RejectsBadIndex) {
  EXPECT_THROW(bessel_zero(0.0, 0), std::domain_error);
  EXPECT_THROW(bessel_zero(-0.5, 1), std::domain_error);
}
