#pragma once

// Mittag-Leffler functions and the relaxation kernel
//
//   beta(t) = E_alpha(-(t / tau_sigma)^alpha),   0 < alpha < 1.
//
// Two evaluation routes are provided and cross-checked in the tests:
//   * the power series sum_j z^j / Gamma(j alpha + beta), used for |z| <= 1;
//   * the real-line integral representation of E_alpha(-t^alpha), folded onto
//     [0, 1] by splitting at x = 1 and substituting x -> 1/x on the tail, so the
//     integrand is bounded on the whole interval.
// alpha = 1 is accepted by the kernel functions and reduces to exponentials; it
// exists for oracle and test paths only.

namespace fracvisco::mlf {

struct MlParams {
  double alpha;
  double beta = 1.0;
};

inline constexpr double kSeriesRadius = 1.0;
inline constexpr int kMaxSeriesTerms = 200;
inline constexpr double kIntegralAbsTol = 1e-12;

/// E_{alpha,beta}(z) by direct summation. Throws NonConvergence once
/// kMaxSeriesTerms terms have been used.
double ml_series(MlParams params, double z);

/// E_alpha(-t^alpha) for t > 0 via the integral representation.
double ml_integral(double alpha, double t);

/// int_0^x E_alpha(-u^alpha) du via the same representation, with the
/// exponential integrated analytically against each node.
double ml_integral_antiderivative(double alpha, double x);

/// beta(t) = E_alpha(-(t/tau_sigma)^alpha); exactly 1 at t = 0.
double kernel_beta(double alpha, double tau_sigma, double t);

/// int_0^x beta(s) ds = x E_{alpha,2}(-(x/tau_sigma)^alpha).
double kernel_antiderivative(double alpha, double tau_sigma, double x);

}  // namespace fracvisco::mlf
