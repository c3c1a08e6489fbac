#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cfou/errors.hpp"
#include "cfou/quad.hpp"

using namespace cfou;
using namespace cfou::quad;

TEST(GaussJacobi, MatchesBetaMoments) {
  for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{-0.4, 0.0}, std::pair{-0.5, -0.5}, std::pair{0.3, -0.7}}) {
    const auto rule = gauss_jacobi_rule(12, a, b);
    double m0 = 0.0, m1 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      m0 += rule.weights[i];
      m1 += rule.weights[i] * (1.0 + rule.nodes[i]);
    }
    EXPECT_NEAR(m0, std::pow(2.0, a + b + 1.0) * std::beta(a + 1.0, b + 1.0), 1e-12);
    EXPECT_NEAR(m1, std::pow(2.0, a + b + 2.0) * std::beta(a + 1.0, b + 2.0), 1e-12);
  }
}

TEST(GaussJacobi, ExactForHighDegreePolynomials) {
  // Legendre weight, degree 2n-1 = 15
  const auto rule = gauss_jacobi_rule(8, 0.0, 0.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 14);
  EXPECT_NEAR(s, 2.0 / 15.0, 1e-14);
}

TEST(Singular1d, Examples) {
  EXPECT_NEAR(integrate_singular_1d([](double) { return 1.0; }, {0.0, 0.0, 0.0, 1.0}), 1.0, 1e-14);
  EXPECT_NEAR(integrate_singular_1d([](double) { return 1.0; }, {-0.4, 0.0, 0.0, 1.0}), 1.0 / 0.6, 1e-12);
}

TEST(Singular1d, GradedMeshOracle) {
  // int_0^1 e^x x^{-1/2} dx = int_0^1 2 e^{u^2} du, midpoint rule on 10^6 cells of u
  const int m = 1000000;
  double oracle = 0.0;
  for (int i = 0; i < m; ++i) {
    const double u = (i + 0.5) / m;
    oracle += 2.0 * std::exp(u * u);
  }
  oracle /= m;
  const double v = integrate_singular_1d([](double x) { return std::exp(x); }, {-0.5, 0.0, 0.0, 1.0});
  EXPECT_NEAR(v, oracle, 1e-8);
}

TEST(Singular1d, BothEndpointsAndBreaks) {
  // int_0^2 x^{-0.3} (2-x)^{-0.6} dx = 2^{0.1} B(0.7, 0.4)
  const double exact = std::pow(2.0, 0.1) * std::beta(0.7, 0.4);
  EXPECT_NEAR(integrate_singular_1d([](double) { return 1.0; }, {-0.3, -0.6, 0.0, 2.0}), exact, 1e-10);
  const auto br = graded_breaks_toward(0.0, 2.0, 1e-3);
  ASSERT_FALSE(br.empty());
  for (double b : br) {
    EXPECT_GT(b, 0.0);
    EXPECT_LT(b, 2.0);
  }
  EXPECT_NEAR(integrate_singular_1d([](double) { return 1.0; }, {-0.3, -0.6, 0.0, 2.0}, {}, br), exact, 1e-10);
}

TEST(Singular1d, ComplexOscillatory) {
  // int_0^1 e^{i 3 x} x^{-1/2} dx = sum_k (3i)^k / (k! (k + 1/2))
  cplx exact = 0.0, term = 1.0;
  for (int k = 0; k < 40; ++k) {
    exact += term / (k + 0.5);
    term *= cplx(0.0, 3.0) / static_cast<double>(k + 1);
  }
  const cplx v = integrate_singular_1d_complex([](double x) { return std::exp(cplx(0.0, 3.0 * x)); },
                                               {-0.5, 0.0, 0.0, 1.0});
  EXPECT_NEAR(std::abs(v - exact), 0.0, 1e-10);
}

TEST(Singular1d, RefinementInvariance) {
  const auto f = [](double x) { return std::cos(5.0 * x); };
  const SingularWeight w{-0.7, -0.2, 0.0, 3.0};
  Tolerance deeper;
  deeper.refine_passes = 2;
  const double a = integrate_singular_1d(f, w), b = integrate_singular_1d(f, w, deeper);
  EXPECT_LE(std::abs(a - b), 1e-8 * std::abs(a) + 1e-12);
}

TEST(Singular1d, NonConvergenceRaisesAccuracyError) {
  Tolerance tight;
  tight.rtol = 1e-15;
  tight.atol = 0.0;
  tight.max_levels = 2;
  tight.max_panels = 4;
  const auto f = [](double x) { return std::sin(200.0 * x); };
  try {
    integrate_singular_1d(f, {0.0, 0.0, 0.0, 10.0}, tight);
    FAIL() << "expected AccuracyError";
  } catch (const AccuracyError& e) {
    EXPECT_GE(e.bound(), 0.0);
  }
}

TEST(Triangle, PowerProductClosedForm) {
  // int_{0<=x<=z<=1} x^a z^b = 1 / ((a+1)(a+b+2))
  const double a = -0.4, b = -0.3;
  const cplx v = integrate_triangle([](double, double) { return cplx(1.0); }, a, b, 1.0, 0.0);
  EXPECT_NEAR(v.real(), 1.0 / ((a + 1.0) * (a + b + 2.0)), 1e-10);
  EXPECT_NEAR(v.imag(), 0.0, 1e-14);
}

TEST(Triangle, ExponentialKernelAgainstSeries) {
  // int_{0<=x<=z<=T} e^{x-z} dx dz = T - 1 + e^{-T}
  const double T = 7.0;
  const cplx v = integrate_triangle([](double x, double z) { return cplx(std::exp(x - z)); }, 0.0, 0.0, T, 1.0);
  EXPECT_NEAR(v.real(), T - 1.0 + std::exp(-T), 1e-9);
}
