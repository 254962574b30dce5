#include "fracvisco/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "fracvisco/errors.hpp"

namespace fracvisco::quad {

GaussRule gauss_legendre(int j) {
  if (j < 1 || j > 64) {
    throw InvalidArgument("gauss_legendre: point count must be in [1, 64], got " +
                          std::to_string(j));
  }
  GaussRule rule;
  rule.nodes.resize(j);
  rule.weights.resize(j);
  const int half = (j + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (j + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Three-term recurrence for P_j(x) and P_{j-1}(x).
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= j; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = j * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Refresh the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= j; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = j * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[j - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[j - 1 - i] = w;
  }
  if (j % 2 == 1) rule.nodes[j / 2] = 0.0;
  return rule;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

AdaptiveResult gauss_kronrod(const ScalarFn& f, double a, double b,
                             const AdaptiveOptions& opts) {
  if (a == b) return {};
  std::priority_queue<Panel> queue;
  Panel first = kronrod15(f, a, b);
  double total = first.value;
  double err = first.error;
  queue.push(first);
  std::size_t panels = 1;
  while (err > opts.abs_tol) {
    if (panels >= opts.max_panels) {
      throw QuadratureFailure("adaptive quadrature exceeded " +
                              std::to_string(opts.max_panels) +
                              " panels (error estimate " + std::to_string(err) + ")");
    }
    const Panel worst = queue.top();
    if (worst.error <= 0.0) break;
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    // Interval collapsed to adjacent doubles: accept what we have.
    if (mid <= worst.a || mid >= worst.b) {
      queue.push({worst.a, worst.b, worst.value, 0.0});
      err -= worst.error;
      continue;
    }
    const Panel left = kronrod15(f, worst.a, mid);
    const Panel right = kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
    // Guard against drift in the running sums.
    if (panels % 64 == 0) {
      auto copy = queue;
      total = 0.0;
      err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, err, panels};
}

double integrate(const ScalarFn& f, double a, double b, const AdaptiveOptions& opts) {
  return gauss_kronrod(f, a, b, opts).value;
}

std::span<const RefPoint> triangle_degree2() {
  static constexpr std::array<RefPoint, 3> rule = {{
      {0.5, 0.0, 1.0 / 6.0},
      {0.5, 0.5, 1.0 / 6.0},
      {0.0, 0.5, 1.0 / 6.0},
  }};
  return rule;
}

std::span<const RefPoint> triangle_degree4() {
  constexpr double a1 = 0.44594849091596488632;
  constexpr double w1 = 0.22338158967801146570 / 2.0;
  constexpr double a2 = 0.09157621350977074346;
  constexpr double w2 = 0.10995174365532186764 / 2.0;
  static constexpr std::array<RefPoint, 6> rule = {{
      {a1, a1, w1},
      {1.0 - 2.0 * a1, a1, w1},
      {a1, 1.0 - 2.0 * a1, w1},
      {a2, a2, w2},
      {1.0 - 2.0 * a2, a2, w2},
      {a2, 1.0 - 2.0 * a2, w2},
  }};
  return rule;
}

std::vector<RefPoint> quad_gauss(int n) {
  if (n < 1 || n > 5) throw InvalidArgument("quad_gauss: n must be in [1, 5]");
  const GaussRule g = gauss_legendre(n);
  std::vector<RefPoint> pts;
  pts.reserve(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      pts.push_back({0.5 * (g.nodes[i] + 1.0), 0.5 * (g.nodes[j] + 1.0),
                     0.25 * g.weights[i] * g.weights[j]});
    }
  }
  return pts;
}

}  // namespace fracvisco::quad
