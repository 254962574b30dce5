#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracvisco/quadrature.hpp"

namespace fracvisco::soe {

/// Panel [c - r, c + r] of the dyadic split of the x-integral. Panel 0 is
/// [0, 1]; panel k >= 1 is [q^{k-1}, q^k].
struct Panel {
  double center;
  double radius;
};

std::vector<Panel> build_panels(double q, int big_k);

/// Geometric refinement of panel 0 towards x = 0: [q^{-i}, q^{-i+1}] for
/// i = 1..m followed by the remainder [0, q^{-m}]. m = 0 returns panel 0 as is.
/// Small x carries the fast exponentials, which panel 0 alone resolves poorly
/// at short lags.
std::vector<Panel> build_head_panels(double q, int head_panels);

/// Smallest m with exp(-t_min * q^{m/alpha}) <= eps, so the remainder
/// [0, q^{-m}] holds at most eps * q^{-m} of the integral at every t >= t_min.
int head_panels_for(double alpha, double eps, double q, double t_min);

using quad::gauss_legendre;
using quad::GaussRule;

/// Sum-of-exponentials approximation
///
///   E_alpha(-t^alpha) ~ sum_j weights[j] * exp(-nodes[j] * t)
///
/// in normalized time. The relaxation kernel of the scheme is evaluated as
/// eval_soe(soe, t / tau_sigma), so one approximation serves every tau_sigma.
struct SoeApprox {
  double alpha = 0.5;
  double q = 10.0;
  int big_k = 0;
  int head_panels = 0;
  int j_per_panel = 1;
  std::vector<double> nodes;
  std::vector<double> weights;
  double eps_target = 0.0;
  double eps_certified = 0.0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Nodes and weights for fixed (K, J) and head refinement m, no
/// certification. (K + 1 + m) J exponentials; m = 0 is the plain dyadic
/// construction with a_kj = (r_k xi_j + c_k)^{-1/alpha} and
/// b_kj = sin(alpha pi)/(alpha pi) w_j r_k / ((r_k xi_j + c_k)^2 + 2 (r_k xi_j + c_k) cos(alpha pi) + 1).
SoeApprox assemble_soe(double alpha, double q, int big_k, int j_per_panel,
                       int head_panels = 0);

double eval_soe(const SoeApprox& soe, double t);

/// Max |eval_soe - ml_integral| on a log-spaced grid of `samples` points over
/// [t_min, t_max] (both ends included). Records the result in eps_certified.
double certify_soe(SoeApprox& soe, double t_min, double t_max, int samples = 400);

struct BuildOptions {
  int samples = 400;
  int initial_j = 8;
  int j_step = 4;
  int max_j = 48;
  int k_step = 2;
  bool refine_head = true;
  std::size_t max_terms = 4096;
};

/// Escalating construction: head refinement from head_panels_for, K starting
/// at ceil(log_q(max(t_max/t_min, 10)/eps)) (clamped to [2, 40]) and
/// J = initial_j; grow J by j_step up to max_j, then K by k_step with J reset,
/// until certification over [t_min, t_max] reaches eps. Throws BudgetExceeded
/// when the exponential count would pass max_terms.
SoeApprox build_soe(double alpha, double eps, double q, double t_min, double t_max,
                    const BuildOptions& opts = {});

/// Certification range used by the time stepper, in normalized time:
/// [dt / (10 tau_sigma), T / tau_sigma].
struct NormalizedRange {
  double t_min;
  double t_max;
};
NormalizedRange scheme_range(double dt, double final_time, double tau_sigma);

}  // namespace fracvisco::soe
