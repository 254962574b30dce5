#include "fracvisco/soe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracvisco/errors.hpp"
#include "fracvisco/mlf.hpp"

namespace fracvisco::soe {

std::vector<Panel> build_panels(double q, int big_k) {
  if (!(q > 1.0)) throw InvalidArgument("build_panels: q must be > 1");
  if (big_k < 0) throw InvalidArgument("build_panels: K must be >= 0");
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(big_k) + 1);
  panels.push_back({0.5, 0.5});
  for (int k = 1; k <= big_k; ++k) {
    const double qk = std::pow(q, k - 1);
    panels.push_back({0.5 * (q + 1.0) * qk, 0.5 * (q - 1.0) * qk});
  }
  return panels;
}

std::vector<Panel> build_head_panels(double q, int head_panels) {
  if (!(q > 1.0)) throw InvalidArgument("build_head_panels: q must be > 1");
  if (head_panels < 0) throw InvalidArgument("build_head_panels: m must be >= 0");
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(head_panels) + 1);
  const double floor = std::pow(q, -head_panels);
  panels.push_back({0.5 * floor, 0.5 * floor});
  for (int i = head_panels; i >= 1; --i) {
    const double lo = std::pow(q, -i);
    const double hi = std::pow(q, -i + 1);
    panels.push_back({0.5 * (lo + hi), 0.5 * (hi - lo)});
  }
  return panels;
}

int head_panels_for(double alpha, double eps, double q, double t_min) {
  const double needed = std::log(std::log(1.0 / eps) / t_min) / std::log(q);
  return std::max(0, static_cast<int>(std::ceil(alpha * needed)));
}

SoeApprox assemble_soe(double alpha, double q, int big_k, int j_per_panel, int head_panels) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("soe: alpha must lie in (0, 1)");
  auto panels = build_head_panels(q, head_panels);
  const auto upper = build_panels(q, big_k);
  panels.insert(panels.end(), upper.begin() + 1, upper.end());
  const GaussRule rule = gauss_legendre(j_per_panel);

  const double s = std::sin(alpha * std::numbers::pi) / (alpha * std::numbers::pi);
  const double c = std::cos(alpha * std::numbers::pi);

  SoeApprox soe;
  soe.alpha = alpha;
  soe.q = q;
  soe.big_k = big_k;
  soe.head_panels = head_panels;
  soe.j_per_panel = j_per_panel;
  soe.nodes.reserve(panels.size() * rule.nodes.size());
  soe.weights.reserve(panels.size() * rule.nodes.size());
  for (const Panel& p : panels) {
    for (int j = 0; j < j_per_panel; ++j) {
      const double x = p.radius * rule.nodes[j] + p.center;
      soe.nodes.push_back(std::pow(x, -1.0 / alpha));
      soe.weights.push_back(s * rule.weights[j] * p.radius / (x * x + 2.0 * x * c + 1.0));
    }
  }
  return soe;
}

double eval_soe(const SoeApprox& soe, double t) {
  double sum = 0.0;
  for (std::size_t j = 0; j < soe.nodes.size(); ++j) {
    sum += soe.weights[j] * std::exp(-soe.nodes[j] * t);
  }
  return sum;
}

namespace {

std::vector<double> log_grid(double t_min, double t_max, int samples) {
  std::vector<double> grid(static_cast<std::size_t>(samples));
  const double lo = std::log(t_min);
  const double step = (std::log(t_max) - lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) grid[i] = std::exp(lo + step * i);
  grid.front() = t_min;
  grid.back() = t_max;
  return grid;
}

double max_deviation(const SoeApprox& soe, const std::vector<double>& grid,
                     const std::vector<double>& reference) {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(eval_soe(soe, grid[i]) - reference[i]));
  }
  return worst;
}

void check_range(double t_min, double t_max, int samples) {
  if (!(t_min > 0.0 && t_max > t_min)) {
    throw InvalidArgument("soe certification range must satisfy 0 < t_min < t_max");
  }
  if (samples < 100) throw InvalidArgument("soe certification needs at least 100 samples");
}

}  // namespace

double certify_soe(SoeApprox& soe, double t_min, double t_max, int samples) {
  check_range(t_min, t_max, samples);
  const auto grid = log_grid(t_min, t_max, samples);
  std::vector<double> reference(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    reference[i] = mlf::ml_integral(soe.alpha, grid[i]);
  }
  soe.eps_certified = max_deviation(soe, grid, reference);
  return soe.eps_certified;
}

SoeApprox build_soe(double alpha, double eps, double q, double t_min, double t_max,
                    const BuildOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("build_soe: alpha must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("build_soe: eps must lie in (0, 1)");
  if (!(q > 1.0)) throw InvalidArgument("build_soe: q must be > 1");
  check_range(t_min, t_max, opts.samples);

  // Reference values are shared by every escalation step.
  const auto grid = log_grid(t_min, t_max, opts.samples);
  std::vector<double> reference(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) reference[i] = mlf::ml_integral(alpha, grid[i]);

  const double ratio = std::max(t_max / t_min, 10.0) / eps;
  int big_k = static_cast<int>(std::ceil(std::log(ratio) / std::log(q)));
  big_k = std::clamp(big_k, 2, 40);
  int j = opts.initial_j;
  const int head = opts.refine_head ? head_panels_for(alpha, eps, q, t_min) : 0;

  double last = 0.0;
  while (static_cast<std::size_t>(big_k + 1 + head) * static_cast<std::size_t>(j) <=
         opts.max_terms) {
    SoeApprox soe = assemble_soe(alpha, q, big_k, j, head);
    soe.eps_target = eps;
    soe.eps_certified = max_deviation(soe, grid, reference);
    last = soe.eps_certified;
    if (soe.eps_certified <= eps) return soe;
    if (j + opts.j_step <= opts.max_j) {
      j += opts.j_step;
    } else {
      big_k += opts.k_step;
      j = opts.initial_j;
    }
  }
  throw BudgetExceeded("build_soe: no certified approximation within " +
                       std::to_string(opts.max_terms) + " exponentials (alpha = " +
                       std::to_string(alpha) + ", eps = " + std::to_string(eps) +
                       ", last deviation " + std::to_string(last) + ")");
}

NormalizedRange scheme_range(double dt, double final_time, double tau_sigma) {
  return {dt / (10.0 * tau_sigma), final_time / tau_sigma};
}

}  // namespace fracvisco::soe
