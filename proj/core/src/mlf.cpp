#include "fracvisco/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracvisco/errors.hpp"
#include "fracvisco/quadrature.hpp"

namespace fracvisco::mlf {

namespace {

void check_kernel_args(double alpha, double tau_sigma, double t) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("Mittag-Leffler kernel: alpha must lie in (0, 1], got " +
                          std::to_string(alpha));
  }
  if (!(tau_sigma > 0.0)) throw InvalidArgument("Mittag-Leffler kernel: tau_sigma must be > 0");
  if (!(t >= 0.0)) throw InvalidArgument("Mittag-Leffler kernel: time must be >= 0");
}

void check_integral_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("integral representation requires 0 < alpha < 1, got " +
                          std::to_string(alpha));
  }
}

}  // namespace

double ml_series(MlParams params, double z) {
  if (!(params.alpha > 0.0) || !(params.beta > 0.0)) {
    throw InvalidArgument("ml_series: alpha and beta must be positive");
  }
  constexpr double rel_tol = 1e-16;
  constexpr double abs_floor = 1e-300;
  double sum = 1.0 / std::tgamma(params.beta);
  if (z == 0.0) return sum;
  const double log_abs_z = std::log(std::abs(z));
  for (int j = 1; j < kMaxSeriesTerms; ++j) {
    const double arg = j * params.alpha + params.beta;
    const double magnitude = std::exp(j * log_abs_z - std::lgamma(arg));
    const double term = (z < 0.0 && (j % 2 == 1)) ? -magnitude : magnitude;
    sum += term;
    if (magnitude <= rel_tol * std::abs(sum) + abs_floor) return sum;
  }
  throw NonConvergence("ml_series: no convergence within " +
                       std::to_string(kMaxSeriesTerms) + " terms for z = " +
                       std::to_string(z));
}

double ml_integral(double alpha, double t) {
  check_integral_alpha(alpha);
  if (!(t > 0.0)) throw InvalidArgument("ml_integral: t must be > 0");
  const double c = std::cos(alpha * std::numbers::pi);
  const double inv_alpha = 1.0 / alpha;
  // x in (0,1] covers the head; the tail [1, inf) is mapped onto the same
  // interval through x -> 1/x and shares the denominator.
  auto integrand = [=](double x) {
    if (x <= 0.0) return 1.0;
    const double head = std::exp(-t * std::pow(x, -inv_alpha));
    const double tail = std::exp(-t * std::pow(x, inv_alpha));
    return (head + tail) / (x * x + 2.0 * x * c + 1.0);
  };
  const double pref = std::sin(alpha * std::numbers::pi) / (alpha * std::numbers::pi);
  quad::AdaptiveOptions opts;
  opts.abs_tol = kIntegralAbsTol;
  return pref * quad::integrate(integrand, 0.0, 1.0, opts);
}

double ml_integral_antiderivative(double alpha, double x) {
  check_integral_alpha(alpha);
  if (!(x >= 0.0)) throw InvalidArgument("ml_integral_antiderivative: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double c = std::cos(alpha * std::numbers::pi);
  const double inv_alpha = 1.0 / alpha;
  // (1 - e^{-x a}) / a, with its a -> 0 limit x.
  auto damped = [x](double a) { return a == 0.0 ? x : -std::expm1(-x * a) / a; };
  auto integrand = [=](double s) {
    if (s <= 0.0) return x;
    return (damped(std::pow(s, -inv_alpha)) + damped(std::pow(s, inv_alpha))) /
           (s * s + 2.0 * s * c + 1.0);
  };
  const double pref = std::sin(alpha * std::numbers::pi) / (alpha * std::numbers::pi);
  quad::AdaptiveOptions opts;
  opts.abs_tol = kIntegralAbsTol * std::max(1.0, x);
  return pref * quad::integrate(integrand, 0.0, 1.0, opts);
}

double kernel_beta(double alpha, double tau_sigma, double t) {
  check_kernel_args(alpha, tau_sigma, t);
  if (t == 0.0) return 1.0;
  const double scaled = t / tau_sigma;
  if (alpha == 1.0) return std::exp(-scaled);
  const double z = -std::pow(scaled, alpha);
  if (std::abs(z) <= kSeriesRadius) {
    // Very small alpha: Gamma(j alpha + 1) grows too slowly for the term cap.
    try {
      return ml_series({alpha, 1.0}, z);
    } catch (const NonConvergence&) {
    }
  }
  return ml_integral(alpha, scaled);
}

double kernel_antiderivative(double alpha, double tau_sigma, double x) {
  check_kernel_args(alpha, tau_sigma, x);
  if (x == 0.0) return 0.0;
  const double scaled = x / tau_sigma;
  if (alpha == 1.0) return -tau_sigma * std::expm1(-scaled);
  const double z = -std::pow(scaled, alpha);
  if (std::abs(z) <= kSeriesRadius) {
    try {
      return x * ml_series({alpha, 2.0}, z);
    } catch (const NonConvergence&) {
    }
  }
  return tau_sigma * ml_integral_antiderivative(alpha, scaled);
}

}  // namespace fracvisco::mlf
