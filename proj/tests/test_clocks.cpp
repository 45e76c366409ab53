#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rimap/clocks.hpp"

namespace rimap {
namespace {

// Frozen values from tests/oracles/compute_oracles.py.
constexpr double kRho1HalfOn1To3 = 0.1713715757797904779;
constexpr double kUpperGammaHalfAtHalf = 0.56241823159440712428;

void expect_rel(double actual, double expected, double rel) {
  EXPECT_LE(std::abs(actual - expected), rel * std::abs(expected))
      << "actual=" << actual << " expected=" << expected;
}

TEST(MeasureMass, Examples) {
  expect_rel(measure_mass(ClockMeasure::rho2(-2.0, -1.0), 0.2, 0.7), 0.5, 1e-10);
  expect_rel(measure_mass(ClockMeasure::rho1(-2.0), 0.0, kInf), 1.0, 1e-10);
  expect_rel(measure_mass(ClockMeasure::rho1(0.5), 1.0, 3.0), kRho1HalfOn1To3, 1e-10);
}

TEST(MeasureMass, OutsideSupportThrows) {
  EXPECT_THROW(measure_mass(ClockMeasure::rho2(-2.0, -1.0), 0.5, 1.5), DomainError);
  EXPECT_THROW(measure_mass(ClockMeasure::rho1(-2.0), -1.0, 1.0), DomainError);
  EXPECT_THROW(measure_mass(ClockMeasure::rho1(-2.0), 2.0, 1.0), DomainError);
}

TEST(MeasureMass, InfiniteAtSingularZero) {
  EXPECT_EQ(measure_mass(ClockMeasure::rho1(0.5), 0.0, 1.0), kInf);
  EXPECT_EQ(measure_mass(ClockMeasure::rho2(-0.5, 0.5), 0.0, 0.5), kInf);
}

TEST(MeasureMass, FinitelyAdditive) {
  const ClockMeasure measures[] = {ClockMeasure::rho1(-2.0), ClockMeasure::rho1(0.5),
                                   ClockMeasure::rho2(-1.5, -0.5), ClockMeasure::rho2(0.2, 0.7)};
  for (const auto& m : measures) {
    const double hi = m.upper() == kInf ? 40.0 : 0.95;
    const double c = 0.05;
    for (double d : {0.1, 0.3, 0.5, 0.9}) {
      const double whole = measure_mass(m, c, hi);
      const double split = measure_mass(m, c, d) + measure_mass(m, d, hi);
      expect_rel(split, whole, 1e-12);
    }
  }
}

TEST(MeasureMass, Rho2TotalMassIsBetaRatio) {
  for (auto [b, a] : {std::pair{-2.0, -1.0}, {-3.0, -0.5}, {-1.2, -0.3}}) {
    const auto m = ClockMeasure::rho2(b, a);
    expect_rel(measure_mass(m, 0.0, 1.0), beta_fn(a - b, -a) / gamma_fn(a - b), 1e-10);
    // Same mass assembled from an interior split, exercising the from-zero path.
    expect_rel(measure_mass(m, 0.0, 0.4) + measure_mass(m, 0.4, 1.0), beta_fn(a - b, -a) / gamma_fn(a - b),
               1e-10);
  }
}

TEST(PushforwardTail, Examples) {
  const auto pc = ProductClock::for_factorization(-2.0, -1.0);
  expect_rel(pushforward_tail(pc, 1.0), std::exp(-1.0), 1e-8);
  EXPECT_LT(pushforward_tail(pc, 800.0), 1e-300);
  EXPECT_EQ(pushforward_tail(pc, kInf), 0.0);
  expect_rel(pushforward_tail(ProductClock::for_factorization(-1.0, -0.5), 0.5), kUpperGammaHalfAtHalf, 1e-8);
  EXPECT_THROW(pushforward_tail(pc, 0.0), DomainError);
}

TEST(PushforwardTail, NonIncreasingInU) {
  const auto pc = ProductClock::for_factorization(-1.5, 0.5);
  double prev = kInf;
  for (int i = 0; i < 50; ++i) {
    const double u = 0.02 * std::pow(1.15, i);
    const double v = pushforward_tail(pc, u);
    EXPECT_LT(v, prev) << "u=" << u;
    prev = v;
  }
}

TEST(TailIdentity, Examples) {
  const std::vector<double> g1 = {0.5, 1.0, 2.0};
  EXPECT_LE(tail_identity_residual(-2.0, -1.0, g1), 1e-8);
  const std::vector<double> g2 = {1.0};
  EXPECT_LE(tail_identity_residual(-3.0, -2.0, g2), 1e-8);
  const std::vector<double> g3 = {0.25, 1.0};
  EXPECT_LE(tail_identity_residual(-1.5, 0.5, g3), 1e-6);
  EXPECT_THROW(tail_identity_residual(-1.0, -2.0, g1), DomainError);
  EXPECT_THROW(tail_identity_residual(-2.0, -1.0, std::vector<double>{}), DomainError);
}

TEST(TailIdentity, ParameterGrid) {
  const std::vector<double> us = {0.1, 0.5, 1.0, 2.0, 5.0};
  for (auto [b, a] : {std::pair{-2.0, -1.0}, {-3.0, -1.0}, {-3.0, -2.0}, {-1.5, -0.5}}) {
    EXPECT_LE(tail_identity_residual(b, a, us), 1e-8) << b << "," << a;
  }
}

// The push-forward measure's density, integrated directly, must reproduce the
// masses computed from tails.
TEST(PushforwardMeasure, DensityIntegratesToTailDifference) {
  const auto pc = ProductClock::for_factorization(-2.5, -1.0);
  const auto m = ClockMeasure::pushforward(pc);
  auto f = [&](double w) { return m.density(w); };
  const double direct = quad::integrate(f, 0.5, 2.0, quad::Tolerance{1e-10}).value;
  expect_rel(measure_mass(m, 0.5, 2.0), direct, 1e-8);
  // And the image measure is rho_1 of the factorized clock: e^{-w} w^0 for alpha = -1.
  expect_rel(m.density(1.3), std::exp(-1.3), 1e-8);
}

} // namespace
} // namespace rimap
