#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "rimap/quadrature.hpp"

namespace rimap::quad {
namespace {

TEST(Integrate, PolynomialIsExactOnOnePanel) {
  auto f = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
  const auto r = integrate(f, -1.0, 2.0);
  EXPECT_NEAR(r.value, 9.0 - 3.0 + 3.0, 1e-13);
  EXPECT_EQ(r.evaluations, 21u);
  EXPECT_TRUE(r.converged);
}

TEST(Integrate, ComplexIntegrand) {
  auto f = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
  const auto r = integrate(f, 0.0, std::numbers::pi);
  EXPECT_NEAR(r.value.real(), 0.0, 1e-13);
  EXPECT_NEAR(r.value.imag(), 2.0, 1e-13);
}

TEST(Integrate, EndpointSingularityRefines) {
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  const auto r = integrate(f, 0.0, 1.0, Tolerance{1e-10});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
  EXPECT_GT(r.evaluations, 21u);
}

TEST(Integrate, ReversedAndEmptyIntervals) {
  auto f = [](double x) { return std::exp(x); };
  EXPECT_EQ(integrate(f, 1.0, 1.0).value, 0.0);
  EXPECT_NEAR(integrate(f, 1.0, 0.0).value, -(std::exp(1.0) - 1.0), 1e-13);
}

TEST(Integrate, NonFiniteIntegrandThrows) {
  auto f = [](double x) { return x > 0.5 ? std::nan("") : 1.0; };
  EXPECT_THROW(integrate(f, 0.0, 1.0), NonConvergent);
}

TEST(Integrate, ReportsNonConvergenceWhenCapped) {
  auto f = [](double x) { return std::sin(1.0 / x); };
  const auto r = integrate(f, 1e-6, 1.0, Tolerance{1e-14, 0.0, 10});
  EXPECT_FALSE(r.converged);
}

// Shells [4^-k, 4^-(k-1)] of int_0^1 x^{-0.9} dx = 10. Pieces are exactly
// geometric, so the extrapolated sum hits the limit after a few steps.
TEST(SumLadder, GeometricPiecesExtrapolate) {
  auto piece = [](int k) {
    const double lo = std::pow(4.0, -k);
    const double hi = std::pow(4.0, -(k - 1));
    return 10.0 * (std::pow(hi, 0.1) - std::pow(lo, 0.1));
  };
  LadderTrace trace;
  const double v = sum_ladder(piece, 0.0, LadderSettings{1e-12}, &trace);
  EXPECT_NEAR(v, 10.0, 1e-10);
  EXPECT_LT(trace.steps, 10);
}

TEST(SumLadder, DivergentPiecesThrow) {
  // int_0^1 x^{-1.2} dx diverges; shells grow by 4^{0.2}.
  auto piece = [](int k) {
    const double lo = std::pow(4.0, -k);
    const double hi = std::pow(4.0, -(k - 1));
    return (std::pow(lo, -0.2) - std::pow(hi, -0.2)) / 0.2;
  };
  EXPECT_THROW(sum_ladder(piece, 0.0, LadderSettings{1e-10}), NonConvergent);
}

TEST(SumLadder, ZeroPiecesConvergeImmediately) {
  auto piece = [](int) { return std::complex<double>{}; };
  LadderTrace trace;
  const auto v = sum_ladder(piece, std::complex<double>{}, LadderSettings{}, &trace);
  EXPECT_EQ(v, std::complex<double>{});
  EXPECT_EQ(trace.steps, 3);
}

} // namespace
} // namespace rimap::quad
