#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <random>

#include "fracvisco/errors.hpp"
#include "fracvisco/mlf.hpp"

using namespace fracvisco;

namespace {

// Plain series in long double, independent of the library route.
double series_oracle(double alpha, double beta, double z) {
  long double sum = 0.0L;
  long double zk = 1.0L;
  for (int k = 0; k < 400; ++k) {
    const long double term = zk / std::tgamma(static_cast<long double>(alpha * k + beta));
    sum += term;
    if (k > 5 && std::fabs(term) < 1e-22L) break;
    zk *= z;
  }
  return static_cast<double>(sum);
}

double erfc_identity(double t) { return std::exp(t) * std::erfc(std::sqrt(t)); }

}  // namespace

TEST(MittagLeffler, ErfcIdentityAtHalf) {
  EXPECT_NEAR(mlf::ml_series({0.5, 1.0}, -1.0), 0.427583576155807, 1e-14);
  EXPECT_NEAR(mlf::ml_integral(0.5, 1.0), 0.427583576155807, 1e-12);
  for (double t : {1e-6, 1e-3, 0.01, 0.3, 0.9, 1.0, 1.7, 4.0, 9.0, 16.0, 25.0}) {
    // beta with tau = 1 is E_{1/2}(-sqrt(t)).
    EXPECT_NEAR(mlf::kernel_beta(0.5, 1.0, t), erfc_identity(t), 1e-8) << t;
  }
}

TEST(MittagLeffler, SeriesMatchesClosedForms) {
  for (double z : {-3.0, -1.0, -0.2, 0.0, 0.5, 2.0}) {
    EXPECT_NEAR(mlf::ml_series({1.0, 1.0}, z), std::exp(z), 1e-13 * std::exp(std::abs(z)));
    EXPECT_NEAR(mlf::ml_series({2.0, 1.0}, -z * z), std::cos(z), 1e-13);
    // E_{1,2}(z) = (e^z - 1) / z
    if (z != 0.0) { EXPECT_NEAR(mlf::ml_series({1.0, 2.0}, z), std::expm1(z) / z, 1e-13); }
  }
}

TEST(MittagLeffler, SeriesAndIntegralRoutesAgree) {
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.8, 0.95}) {
    for (double t : {0.05, 0.2, 0.5, 0.9, 1.0}) {
      const double z = -std::pow(t, alpha);
      EXPECT_NEAR(mlf::ml_series({alpha, 1.0}, z), mlf::ml_integral(alpha, t), 1e-11)
          << alpha << " " << t;
      EXPECT_NEAR(mlf::ml_series({alpha, 1.0}, z), series_oracle(alpha, 1.0, z), 1e-13);
    }
  }
}

TEST(MittagLeffler, TwoSidedBoundsOnRandomSample) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> alpha_dist(0.05, 0.95);
  std::uniform_real_distribution<double> log_t(-4.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = alpha_dist(rng);
    const double t = std::pow(10.0, log_t(rng));
    const double ta = std::pow(t, alpha);
    const double e = mlf::kernel_beta(alpha, 1.0, t);
    const double lower = 1.0 / (1.0 + std::tgamma(1.0 - alpha) * ta);
    const double upper = 1.0 / (1.0 + ta / std::tgamma(1.0 + alpha));
    EXPECT_GE(e, lower * (1.0 - 1e-12)) << alpha << " " << t;
    EXPECT_LE(e, upper * (1.0 + 1e-12)) << alpha << " " << t;
  }
}

TEST(MittagLeffler, KernelIsMonotoneAndScaled) {
  const double tau = 0.5;
  double prev = 1.0;
  for (double t = 0.01; t < 5.0; t *= 1.3) {
    const double b = mlf::kernel_beta(0.6, tau, t);
    EXPECT_LT(b, prev);
    EXPECT_GT(b, 0.0);
    EXPECT_DOUBLE_EQ(b, mlf::kernel_beta(0.6, 1.0, t / tau));
    prev = b;
  }
  EXPECT_EQ(mlf::kernel_beta(0.3, 0.5, 0.0), 1.0);
  EXPECT_NEAR(mlf::kernel_beta(1.0, 0.5, 0.7), std::exp(-1.4), 1e-15);
}

TEST(MittagLeffler, AntiderivativeMatchesQuadratureOracle) {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (double tau : {0.5, 1.0}) {
      for (double x : {1e-4, 0.01, 0.3, 0.5, 1.0, 2.0}) {
        const double oracle =
            ts.integrate([&](double s) { return mlf::kernel_beta(alpha, tau, s); }, 0.0, x);
        EXPECT_NEAR(mlf::kernel_antiderivative(alpha, tau, x), oracle, 1e-11)
            << alpha << " " << tau << " " << x;
      }
    }
  }
}

TEST(MittagLeffler, AntiderivativeEqualsTwoParameterForm) {
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (double x : {0.1, 0.4, 0.9, 1.6}) {
      const double z = -std::pow(x / 0.5, alpha);
      EXPECT_NEAR(mlf::kernel_antiderivative(alpha, 0.5, x), x * series_oracle(alpha, 2.0, z),
                  1e-12);
    }
  }
  EXPECT_NEAR(mlf::kernel_antiderivative(1.0, 0.5, 1.0), 0.5 * (1.0 - std::exp(-2.0)), 1e-15);
  EXPECT_EQ(mlf::kernel_antiderivative(0.5, 0.5, 0.0), 0.0);
}

TEST(MittagLeffler, ArgumentChecks) {
  EXPECT_THROW(mlf::kernel_beta(0.0, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(mlf::kernel_beta(1.5, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(mlf::kernel_beta(0.5, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(mlf::kernel_beta(0.5, 1.0, -1.0), InvalidArgument);
  EXPECT_THROW(mlf::ml_integral(1.0, 1.0), InvalidArgument);
  EXPECT_THROW(mlf::ml_integral(0.5, 0.0), InvalidArgument);
  EXPECT_THROW(mlf::ml_series({-0.5, 1.0}, 1.0), InvalidArgument);
  EXPECT_THROW(mlf::ml_series({0.5, 1.0}, -60.0), NonConvergence);
}
