#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracvisco::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on P_j from the Chebyshev-angle guess.
/// Valid for 1 <= j <= 64; throws InvalidArgument otherwise.
GaussRule gauss_legendre(int j);

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  std::size_t max_panels = 10000;
};

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

using ScalarFn = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration on [a, b]. The panel with
/// the largest error estimate is bisected until the summed estimate drops
/// below abs_tol. Throws QuadratureFailure when max_panels is exceeded.
AdaptiveResult gauss_kronrod(const ScalarFn& f, double a, double b,
                             const AdaptiveOptions& opts = {});

/// Convenience wrapper returning only the value.
double integrate(const ScalarFn& f, double a, double b,
                 const AdaptiveOptions& opts = {});

/// Point of a reference-element rule: barycentric-free reference coordinates
/// (xi, eta) and weight. Triangle rules live on the unit triangle
/// {xi, eta >= 0, xi + eta <= 1} with weights summing to 1/2; quad rules on
/// [0, 1]^2 with weights summing to 1.
struct RefPoint {
  double xi;
  double eta;
  double weight;
};

/// Edge-midpoint rule, exact for degree 2.
std::span<const RefPoint> triangle_degree2();
/// Six-point symmetric rule, exact for degree 4.
std::span<const RefPoint> triangle_degree4();
/// Tensor Gauss rule with n points per direction (n in 1..5).
std::vector<RefPoint> quad_gauss(int n);

}  // namespace fracvisco::quad
