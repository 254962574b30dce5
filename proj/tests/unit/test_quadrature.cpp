#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numeric>

#include "fracvisco/errors.hpp"
#include "fracvisco/quadrature.hpp"

using namespace fracvisco;

namespace {

double monomial_exact(int k) { return k % 2 ? 0.0 : 2.0 / (k + 1); }

// int over the unit triangle of xi^a eta^b = a! b! / (a + b + 2)!
double triangle_monomial(int a, int b) {
  return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

}  // namespace

TEST(GaussLegendre, IntegratesMonomialsUpToDegree2JMinus1) {
  for (int j : {1, 2, 3, 5, 8, 13, 24, 48, 64}) {
    const auto rule = quad::gauss_legendre(j);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(j));
    for (int k = 0; k <= std::min(2 * j - 1, 40); ++k) {
      double s = 0.0;
      for (int i = 0; i < j; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
      EXPECT_NEAR(s, monomial_exact(k), 1e-13) << "j=" << j << " k=" << k;
    }
  }
}

TEST(GaussLegendre, MatchesBoostTabulatedRule) {
  using boost::math::quadrature::gauss;
  const auto rule = quad::gauss_legendre(20);
  const auto& absc = gauss<double, 20>::abscissa();
  const auto& wts = gauss<double, 20>::weights();
  // Boost stores the non-negative half.
  for (std::size_t k = 0; k < absc.size(); ++k) {
    bool found = false;
    for (int i = 0; i < 20; ++i) {
      if (std::abs(rule.nodes[i] - absc[k]) < 1e-14) {
        EXPECT_NEAR(rule.weights[i], wts[k], 1e-14);
        found = true;
      }
    }
    EXPECT_TRUE(found) << "abscissa " << absc[k];
  }
}

TEST(GaussLegendre, RejectsBadCounts) {
  EXPECT_THROW(quad::gauss_legendre(0), InvalidArgument);
  EXPECT_THROW(quad::gauss_legendre(65), InvalidArgument);
}

TEST(GaussKronrod, SmoothAndSingularIntegrands) {
  EXPECT_NEAR(quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0), std::exp(1.0) - 1.0,
              1e-13);
  EXPECT_NEAR(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0), 2.0, 1e-10);
  EXPECT_NEAR(quad::integrate([](double x) { return std::pow(x, -0.7); }, 0.0, 1.0), 1.0 / 0.3,
              1e-9);
  EXPECT_DOUBLE_EQ(quad::integrate([](double) { return 1.0; }, 2.0, 2.0), 0.0);
}

TEST(GaussKronrod, BudgetExhaustionThrows) {
  quad::AdaptiveOptions opts;
  opts.abs_tol = 1e-15;
  opts.max_panels = 4;
  EXPECT_THROW(quad::gauss_kronrod([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, opts),
               QuadratureFailure);
}

TEST(TriangleRules, WeightsAndPolynomialExactness) {
  const auto r2 = quad::triangle_degree2();
  const auto r4 = quad::triangle_degree4();
  auto apply = [](std::span<const quad::RefPoint> rule, int a, int b) {
    double s = 0.0;
    for (const auto& p : rule) s += p.weight * std::pow(p.xi, a) * std::pow(p.eta, b);
    return s;
  };
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      if (a + b <= 2) { EXPECT_NEAR(apply(r2, a, b), triangle_monomial(a, b), 1e-15); }
      EXPECT_NEAR(apply(r4, a, b), triangle_monomial(a, b), 1e-15) << a << "," << b;
    }
  }
  // Degree 5 is outside the 6-point rule's reach.
  EXPECT_GT(std::abs(apply(r4, 5, 0) - triangle_monomial(5, 0)), 1e-8);
}

TEST(QuadGauss, TensorRuleExactness) {
  for (int n = 1; n <= 5; ++n) {
    const auto rule = quad::quad_gauss(n);
    ASSERT_EQ(rule.size(), static_cast<std::size_t>(n * n));
    for (int a = 0; a <= 2 * n - 1; ++a) {
      for (int b = 0; b <= 2 * n - 1; ++b) {
        double s = 0.0;
        for (const auto& p : rule) s += p.weight * std::pow(p.xi, a) * std::pow(p.eta, b);
        EXPECT_NEAR(s, 1.0 / ((a + 1) * (b + 1)), 1e-14);
      }
    }
  }
  EXPECT_THROW(quad::quad_gauss(6), InvalidArgument);
}
