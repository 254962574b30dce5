#include "fracvisco/stepper.hpp"

#include <chrono>
#include <cmath>

#include "fracvisco/errors.hpp"
#include "fracvisco/mlf.hpp"

namespace fracvisco {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Fast: return "fast";
    case Scheme::Direct: return "direct";
    case Scheme::Theta: return "theta";
  }
  return "?";
}

std::vector<double> theta_weights(const soe::SoeApprox& soe, double tau_sigma, double dt,
                                  int count) {
  if (!(dt > 0.0) || !(tau_sigma > 0.0) || count < 1) {
    throw InvalidArgument("theta_weights: need dt > 0, tau_sigma > 0, count >= 1");
  }
  std::vector<double> theta(static_cast<std::size_t>(count), 0.0);
  for (std::size_t j = 0; j < soe.size(); ++j) {
    const double a = soe.nodes[j];
    const double scale = soe.weights[j] * tau_sigma / a;
    const double x = a * dt / tau_sigma;
    // e^{-(i-1)x} - e^{-ix} = e^{-(i-1)x} (1 - e^{-x})
    const double one_step = -std::expm1(-x);
    const double decay = std::exp(-x);
    double lead = 1.0;
    for (int i = 0; i < count; ++i) {
      theta[static_cast<std::size_t>(i)] += scale * lead * one_step;
      lead *= decay;
      if (lead == 0.0) break;
    }
  }
  return theta;
}

std::vector<double> direct_weights(double alpha, double tau_sigma, double dt, int count) {
  if (!(dt > 0.0) || count < 1) throw InvalidArgument("direct_weights: need dt > 0, count >= 1");
  std::vector<double> w(static_cast<std::size_t>(count));
  double prev = 0.0;
  for (int m = 1; m <= count; ++m) {
    const double cur = mlf::kernel_antiderivative(alpha, tau_sigma, m * dt);
    w[static_cast<std::size_t>(m - 1)] = cur - prev;
    prev = cur;
  }
  return w;
}

MemoryState::MemoryState(const soe::SoeApprox& soe, double tau_sigma, double dt,
                         std::size_t n_dofs)
    : n_dofs_(n_dofs) {
  if (!(dt > 0.0) || !(tau_sigma > 0.0)) {
    throw InvalidArgument("MemoryState: need dt > 0 and tau_sigma > 0");
  }
  decay_.resize(soe.size());
  gain_.resize(soe.size());
  for (std::size_t j = 0; j < soe.size(); ++j) {
    const double x = soe.nodes[j] * dt / tau_sigma;
    decay_[j] = std::exp(-x);
    gain_[j] = soe.weights[j] * tau_sigma / soe.nodes[j] * -std::expm1(-x);
  }
  data_.assign(soe.size() * n_dofs, 0.0);
}

void MemoryState::advance(std::span<const double> v_prev) {
  for (std::size_t j = 0; j < decay_.size(); ++j) {
    double* h = data_.data() + j * n_dofs_;
    const double d = decay_[j];
    const double g = gain_[j];
    for (std::size_t i = 0; i < n_dofs_; ++i) h[i] = d * h[i] + g * v_prev[i];
  }
}

void MemoryState::sum(std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < decay_.size(); ++j) {
    const double* h = data_.data() + j * n_dofs_;
    for (std::size_t i = 0; i < n_dofs_; ++i) out[i] += h[i];
  }
}

void MemoryState::advance_and_sum(std::span<const double> v_prev, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < decay_.size(); ++j) {
    double* h = data_.data() + j * n_dofs_;
    const double d = decay_[j];
    const double g = gain_[j];
    for (std::size_t i = 0; i < n_dofs_; ++i) {
      h[i] = d * h[i] + g * v_prev[i];
      out[i] += h[i];
    }
  }
}

System System::build(const Mesh& mesh, const DofMap& dofs, const Material& material, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("System::build: dt must be > 0");
  System s;
  s.dt = dt;
  s.mass = assemble_mass(mesh, dofs);
  s.a_mat = a_form_matrix(mesh, dofs, material);
  s.b_mat = b_form_matrix(mesh, dofs, material);
  s.lhs = SparseMatrix::combine(1.0 / dt, s.mass, 1.0, s.a_mat);
  return s;
}

namespace {

// rhs = M v_prev / dt + B conv + load, then CG from v_prev.
Vector solve_step(const System& sys, std::span<const double> v_prev, std::span<const double> conv,
                  std::span<const double> load, double cg_rel_tol, std::size_t* iterations) {
  const std::size_t n = v_prev.size();
  Vector rhs(n), tmp(n);
  sys.mass.multiply(v_prev, rhs);
  sys.b_mat.multiply(conv, tmp);
  const double inv_dt = 1.0 / sys.dt;
  for (std::size_t i = 0; i < n; ++i) rhs[i] = inv_dt * rhs[i] + tmp[i] + load[i];
  Vector x(v_prev.begin(), v_prev.end());
  CgOptions opts;
  opts.rel_tol = cg_rel_tol;
  const CgReport rep = cg_solve(sys.lhs, rhs, x, opts);
  if (iterations) *iterations += rep.iterations;
  return x;
}

void weighted_history(std::span<const Vector> history, std::span<const double> weights,
                      std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t n = history.size();
  if (weights.size() < n) throw InvalidArgument("weighted_history: too few weights");
  for (std::size_t i = 0; i < n; ++i) axpy(weights[n - 1 - i], history[i], out);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Vector step_fast(const System& sys, const MemoryState& mem, std::span<const double> v_prev,
                 std::span<const double> load, double cg_rel_tol) {
  Vector conv(v_prev.size());
  mem.sum(conv);
  return solve_step(sys, v_prev, conv, load, cg_rel_tol, nullptr);
}

Vector step_direct(const System& sys, std::span<const Vector> history,
                   std::span<const double> load, std::span<const double> weights,
                   double cg_rel_tol) {
  if (history.empty()) throw InvalidArgument("step_direct: empty history");
  Vector conv(history.front().size());
  weighted_history(history, weights, conv);
  return solve_step(sys, history.back(), conv, load, cg_rel_tol, nullptr);
}

RunResult run(const ManufacturedProblem& problem, const Mesh& mesh, const DofMap& dofs,
              const RunOptions& opts) {
  if (opts.n_steps < 0) throw InvalidArgument("run: n_steps must be >= 0");
  const auto t_start = Clock::now();
  const Material& mat = problem.material;
  mat.validate();
  const int n_steps = opts.n_steps;
  const double final_time = problem.final_time;
  const double dt = n_steps > 0 ? final_time / n_steps : final_time;
  const std::size_t nd = dofs.n_dofs();

  RunResult result;
  const System sys = System::build(mesh, dofs, mat, dt);
  const auto a_terms = a_form_terms(mat);
  Vector v = ritz_project(mesh, dofs, sys.a_mat, a_terms, problem.gradient);

  soe::SoeApprox soe;
  std::vector<double> weights;
  std::optional<MemoryState> memory;
  if (n_steps > 0) {
    if (opts.scheme == Scheme::Direct) {
      weights = direct_weights(mat.alpha, mat.tau_sigma, dt, n_steps);
    } else {
      if (opts.soe) {
        soe = *opts.soe;
      } else {
        const double eps = opts.eps > 0.0 ? opts.eps : dt / 10.0;
        const auto range = soe::scheme_range(dt, final_time, mat.tau_sigma);
        soe = soe::build_soe(mat.alpha, eps, opts.q, range.t_min, range.t_max);
      }
      result.n_exp = soe.size();
      result.eps_certified = soe.eps_certified;
      if (opts.scheme == Scheme::Fast) {
        memory.emplace(soe, mat.tau_sigma, dt, nd);
      } else {
        weights = theta_weights(soe, mat.tau_sigma, dt, n_steps);
      }
    }
  }
  const LoadPrecomputation pre = LoadPrecomputation::build(mesh, dofs, problem);
  const std::vector<double> conv_factors =
      n_steps > 0 ? conv_factor_grid(mat.alpha, mat.tau_sigma, dt, n_steps)
                  : std::vector<double>{0.0};
  result.timings.setup = seconds_since(t_start);

  if (opts.record_trajectory) result.trajectory.push_back(v);
  std::vector<Vector> history;
  if (opts.scheme != Scheme::Fast && n_steps > 0) {
    history.reserve(static_cast<std::size_t>(n_steps));
  }
  if (memory) result.peak_history_bytes = memory->bytes();

  Vector load(nd), conv(nd);
  for (int n = 1; n <= n_steps; ++n) {
    const double t = n * dt;
    auto mark = Clock::now();
    assemble_load_into(pre, t, conv_factors[static_cast<std::size_t>(n)], load);
    result.timings.load += seconds_since(mark);

    mark = Clock::now();
    if (memory) {
      memory->advance_and_sum(v, conv);
    } else {
      history.push_back(v);
      weighted_history(history, weights, conv);
      result.peak_history_bytes =
          std::max(result.peak_history_bytes, history.size() * nd * sizeof(double));
    }
    result.timings.history += seconds_since(mark);

    mark = Clock::now();
    v = solve_step(sys, v, conv, load, opts.cg_rel_tol, &result.cg_iterations);
    result.timings.solve += seconds_since(mark);
    if (opts.record_trajectory) result.trajectory.push_back(v);
  }

  result.error = exact_error(mesh, dofs, v, problem, n_steps > 0 ? final_time : 0.0);
  result.final = std::move(v);
  result.timings.total = seconds_since(t_start);
  return result;
}

}  // namespace fracvisco
