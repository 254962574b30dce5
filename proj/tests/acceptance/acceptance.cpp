// Acceptance suite: one [PASS]/[FAIL] line per criterion, detail lines
// indented beneath. Exit status is nonzero if any selected criterion fails.
//
//   fracvisco_acceptance                 all criteria
//   fracvisco_acceptance --criterion 4   a single criterion

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fracvisco/errors.hpp"
#include "fracvisco/fem.hpp"
#include "fracvisco/mlf.hpp"
#include "fracvisco/problems.hpp"
#include "fracvisco/soe.hpp"
#include "fracvisco/stepper.hpp"

using namespace fracvisco;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double rel_dev(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

RunResult solve(ProblemName name, MeshKind kind, double alpha, int n, int n_steps,
                Scheme scheme = Scheme::Fast) {
  const auto problem = ManufacturedProblem::make(name, Material::experiment(alpha));
  const Mesh mesh = Mesh::build(kind, n);
  const DofMap dofs = DofMap::build(mesh);
  RunOptions opts;
  opts.scheme = scheme;
  opts.n_steps = n_steps;
  return run(problem, mesh, dofs, opts);
}

// Error ladder against reference errors and orders; `label` names the level.
void compare_ladder(Outcome& out, const std::string& tag, const std::vector<std::string>& labels,
                    const std::vector<double>& errors, const std::vector<double>& ref_errors,
                    const std::vector<double>& ref_orders) {
  for (std::size_t k = 0; k < errors.size(); ++k) {
    const double dev = rel_dev(errors[k], ref_errors[k]);
    out.check(dev <= 0.15, fmt("%s %s: error %.4e vs %.3e (%.1f%% off, limit 15%%)", tag.c_str(),
                               labels[k].c_str(), errors[k], ref_errors[k], 100.0 * dev));
    if (k > 0) {
      const double order = std::log2(errors[k - 1] / errors[k]);
      out.check(std::abs(order - ref_orders[k]) <= 0.2,
                fmt("%s %s: order %.3f vs %.2f (limit +-0.2)", tag.c_str(), labels[k].c_str(),
                    order, ref_orders[k]));
    }
  }
}

Outcome criterion1() {
  Outcome out;
  const auto start = Clock::now();
  const std::vector<int> levels{4, 8, 16, 32, 64};
  const std::map<double, std::vector<double>> ref_err{
      {0.3, {1.82e-2, 4.58e-3, 1.18e-3, 2.86e-4, 5.74e-5}},
      {0.5, {1.88e-2, 4.73e-3, 1.22e-3, 3.07e-4, 7.57e-5}},
      {0.8, {1.96e-2, 4.98e-3, 1.27e-3, 3.19e-4, 7.91e-5}}};
  const std::map<double, std::vector<double>> ref_ord{
      {0.3, {0.0, 1.99, 1.96, 1.99, 2.02}},
      {0.5, {0.0, 1.99, 1.96, 1.99, 2.02}},
      {0.8, {0.0, 1.97, 1.97, 2.00, 2.00}}};
  std::vector<std::string> labels;
  for (int n : levels) labels.push_back("h/sqrt2=1/" + std::to_string(n));
  for (double alpha : {0.3, 0.5, 0.8}) {
    std::vector<double> errors;
    for (int n : levels) errors.push_back(solve(ProblemName::Ex61, MeshKind::Quadrilateral, alpha, n, n * n).error);
    compare_ladder(out, fmt("alpha=%.1f", alpha), labels, errors, ref_err.at(alpha), ref_ord.at(alpha));
  }
  const double elapsed = seconds_since(start);
  out.check(elapsed < 600.0, fmt("runtime %.1f s (budget 600 s)", elapsed));
  return out;
}

Outcome criterion2() {
  Outcome out;
  const auto start = Clock::now();
  const std::vector<int> steps{5, 10, 20, 40, 80};
  std::vector<std::string> labels;
  std::vector<double> errors;
  for (int s : steps) {
    labels.push_back("dt=1/" + std::to_string(s));
    errors.push_back(solve(ProblemName::Ex61, MeshKind::Quadrilateral, 0.5, 64, s).error);
  }
  compare_ladder(out, "alpha=0.5", labels, errors, {3.43e-2, 1.52e-2, 7.15e-3, 3.58e-3, 1.79e-3},
                 {0.0, 1.0, 1.0, 1.0, 1.0});
  const double elapsed = seconds_since(start);
  out.check(elapsed < 900.0, fmt("runtime %.1f s (budget 900 s)", elapsed));
  return out;
}

Outcome criterion3() {
  Outcome out;
  // Square spatial column, alpha = 0.5.
  const std::vector<int> levels{4, 8, 16, 32, 64};
  std::vector<std::string> labels;
  std::vector<double> errors;
  for (int n : levels) {
    labels.push_back("h/sqrt2=1/" + std::to_string(n));
    errors.push_back(solve(ProblemName::Ex62, MeshKind::Quadrilateral, 0.5, n, n * n).error);
  }
  compare_ladder(out, "square spatial", labels, errors,
                 {6.39e-4, 1.58e-4, 3.92e-5, 9.79e-6, 2.44e-6}, {0.0, 2.02, 2.01, 2.00, 2.00});
  // Triangular temporal column, alpha = 0.5, h = sqrt(2)/64.
  labels.clear();
  errors.clear();
  for (int s : {5, 10, 20, 40, 80}) {
    labels.push_back("dt=1/" + std::to_string(s));
    errors.push_back(solve(ProblemName::Ex62, MeshKind::Triangular, 0.5, 64, s).error);
  }
  compare_ladder(out, "triangular temporal", labels, errors,
                 {3.52e-4, 1.67e-4, 7.94e-5, 3.91e-5, 1.95e-5}, {0.0, 1.08, 1.07, 1.02, 1.00});
  return out;
}

Outcome criterion4() {
  Outcome out;
  const double t_min = 1e-4, t_max = 2.0;
  for (double alpha : {0.3, 0.5, 0.8}) {
    std::size_t n_coarse = 0;
    for (double eps : {1e-3, 1e-6}) {
      const auto s = soe::build_soe(alpha, eps, 10.0, t_min, t_max);
      // Independent check against the integral representation on a log grid.
      double worst = 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double t = t_min * std::pow(t_max / t_min, i / 1000.0);
        worst = std::max(worst, std::abs(soe::eval_soe(s, t) - mlf::ml_integral(alpha, t)));
      }
      out.check(s.eps_certified <= eps && worst <= eps,
                fmt("alpha=%.1f eps=%.0e: N_exp=%zu certified %.3e, recheck %.3e", alpha, eps,
                    s.size(), s.eps_certified, worst));
      if (eps == 1e-3) {
        n_coarse = s.size();
      } else {
        const double ratio = static_cast<double>(s.size()) / n_coarse;
        out.check(ratio <= 4.0, fmt("alpha=%.1f N_exp(1e-6)/N_exp(1e-3) = %.2f (limit 4)", alpha, ratio));
      }
    }
  }
  return out;
}

Outcome criterion5() {
  Outcome out;
  for (MeshKind kind : {MeshKind::Triangular, MeshKind::Quadrilateral}) {
    const auto problem = ManufacturedProblem::make(ProblemName::Ex61, Material::experiment(0.5));
    const Mesh mesh = Mesh::build(kind, 8);
    const DofMap dofs = DofMap::build(mesh);
    RunOptions opts;
    opts.n_steps = 32;
    opts.record_trajectory = true;
    opts.cg_rel_tol = 1e-13;
    const auto fast = run(problem, mesh, dofs, opts);
    opts.scheme = Scheme::Theta;
    const auto theta = run(problem, mesh, dofs, opts);
    double worst = 0.0;
    for (std::size_t n = 0; n < fast.trajectory.size(); ++n) {
      for (std::size_t i = 0; i < fast.trajectory[n].size(); ++i) {
        worst = std::max(worst, std::abs(fast.trajectory[n][i] - theta.trajectory[n][i]));
      }
    }
    out.check(worst <= 1e-10 && fast.trajectory.size() == 33,
              fmt("%s n=8 N=32: max |fast - theta| = %.3e (limit 1e-10)",
                  std::string(to_string(kind)).c_str(), worst));
  }
  {
    const auto problem = ManufacturedProblem::make(ProblemName::Ex61, Material::experiment(0.5));
    const Mesh mesh = Mesh::build(MeshKind::Quadrilateral, 16);
    const DofMap dofs = DofMap::build(mesh);
    RunOptions opts;
    opts.n_steps = 64;
    opts.eps = 1e-8;
    opts.cg_rel_tol = 1e-12;
    const auto fast = run(problem, mesh, dofs, opts);
    opts.scheme = Scheme::Direct;
    const auto direct = run(problem, mesh, dofs, opts);
    Vector diff(fast.final.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = fast.final[i] - direct.final[i];
    const double l2 = l2_error(mesh, dofs, diff, [](double, double) { return Vec2{0.0, 0.0}; });
    out.check(l2 <= 1e-5, fmt("quad n=16 N=64 eps=1e-8: ||fast - direct||_L2 = %.3e (limit 1e-5)", l2));
  }
  return out;
}

Outcome criterion6() {
  Outcome out;
  const auto problem = ManufacturedProblem::make(ProblemName::Ex61, Material::experiment(0.5));
  const Mesh mesh = Mesh::build(MeshKind::Quadrilateral, 64);
  const DofMap dofs = DofMap::build(mesh);
  const std::size_t vec_bytes = dofs.n_dofs() * sizeof(double);
  // One approximation, certified for the finer step, serves both runs so that
  // N_exp is held fixed while N doubles.
  const double dt_fine = 1.0 / 4000;
  const auto range = soe::scheme_range(dt_fine, 1.0, problem.material.tau_sigma);
  const auto shared = soe::build_soe(0.5, dt_fine / 10, 10.0, range.t_min, range.t_max);

  std::map<std::pair<int, int>, RunResult> res;
  for (Scheme scheme : {Scheme::Fast, Scheme::Direct}) {
    for (int n_steps : {2000, 4000}) {
      RunOptions opts;
      opts.scheme = scheme;
      opts.n_steps = n_steps;
      if (scheme == Scheme::Fast) opts.soe = shared;
      res[{static_cast<int>(scheme), n_steps}] = run(problem, mesh, dofs, opts);
    }
  }
  const auto& f1 = res.at({static_cast<int>(Scheme::Fast), 2000});
  const auto& f2 = res.at({static_cast<int>(Scheme::Fast), 4000});
  const auto& d1 = res.at({static_cast<int>(Scheme::Direct), 2000});
  const auto& d2 = res.at({static_cast<int>(Scheme::Direct), 4000});

  const double fast_ratio = f2.timings.history / f1.timings.history;
  const double direct_ratio = d2.timings.history / d1.timings.history;
  out.check(std::abs(fast_ratio - 2.0) <= 0.8,
            fmt("fast history time %.2f s -> %.2f s, ratio %.2f (expected 2 +- 40%%)",
                f1.timings.history, f2.timings.history, fast_ratio));
  out.check(std::abs(direct_ratio - 4.0) <= 1.6,
            fmt("direct history time %.2f s -> %.2f s, ratio %.2f (expected 4 +- 40%%)",
                d1.timings.history, d2.timings.history, direct_ratio));
  out.check(f1.peak_history_bytes == f2.peak_history_bytes &&
                f2.peak_history_bytes == shared.size() * vec_bytes,
            fmt("fast peak history %zu / %zu bytes = N_exp (%zu) dof-vectors", f1.peak_history_bytes,
                f2.peak_history_bytes, shared.size()));
  const double mem_ratio = static_cast<double>(d2.peak_history_bytes) / d1.peak_history_bytes;
  out.check(std::abs(mem_ratio - 2.0) <= 0.01 && d2.peak_history_bytes >= 4000 * vec_bytes,
            fmt("direct peak history %zu -> %zu bytes, ratio %.4f (linear in N)",
                d1.peak_history_bytes, d2.peak_history_bytes, mem_ratio));
  return out;
}

Outcome criterion7() {
  Outcome out;
  {
    // Completely monotone kernel bounds on random (alpha, t).
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> pick(1, 9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double tau = 0.5;
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      const double alpha = 0.1 * pick(rng);
      const double t = std::max(1e-6, unit(rng));
      const double s = std::pow(t / tau, alpha);
      const double b = mlf::kernel_beta(alpha, tau, t);
      const double lo = 1.0 / (1.0 + std::tgamma(1.0 - alpha) * s);
      const double hi = std::tgamma(1.0 + alpha) / (std::tgamma(1.0 + alpha) + s);
      if (b < lo * (1 - 1e-12) || b > hi * (1 + 1e-12)) ++violations;
    }
    out.check(violations == 0, fmt("Mittag-Leffler bounds on 1000 samples: %d violations", violations));
  }
  {
    double worst = 0.0;
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
      const double ref = std::exp(x * x) * std::erfc(x);
      worst = std::max(worst, std::abs(mlf::ml_integral(0.5, x * x) - ref));
      worst = std::max(worst, std::abs(mlf::kernel_beta(0.5, 1.0, x * x) - ref));
    }
    out.check(worst <= 1e-8, fmt("E_1/2(-x) = e^{x^2} erfc(x): max deviation %.3e (limit 1e-8)", worst));
  }
  {
    const double tau = 0.5, dt = 0.01;
    const auto r = soe::scheme_range(dt, 1.0, tau);
    const auto s = soe::build_soe(0.5, dt / 10, 10.0, r.t_min, r.t_max);
    const auto theta = theta_weights(s, tau, dt, 100);
    double total = 0.0, closed = 0.0;
    for (double th : theta) total += th;
    for (std::size_t j = 0; j < s.size(); ++j) {
      closed += s.weights[j] * tau / s.nodes[j] * (-std::expm1(-100 * dt * s.nodes[j] / tau));
    }
    out.check(std::abs(total - closed) <= 1e-12,
              fmt("theta telescoping: |sum - closed form| = %.3e (limit 1e-12)", std::abs(total - closed)));
  }
  for (MeshKind kind : {MeshKind::Triangular, MeshKind::Quadrilateral}) {
    const Mesh mesh = Mesh::build(kind, 6);
    const DofMap free = DofMap::build(mesh, BoundaryTreatment::Free);
    const SparseMatrix k = assemble_elastic(mesh, free, 1.0, 2.0, 1.0);
    double worst = 0.0;
    for (const VectorField& r : {VectorField([](double, double) { return Vec2{1.0, 0.0}; }),
                                 VectorField([](double, double) { return Vec2{0.0, 1.0}; }),
                                 VectorField([](double x, double y) { return Vec2{-y, x}; })}) {
      for (double v : k * interpolate(mesh, free, r)) worst = std::max(worst, std::abs(v));
    }
    out.check(worst <= 1e-12, fmt("%s rigid motions in elastic kernel: max |K r| = %.3e (limit 1e-12)",
                                  std::string(to_string(kind)).c_str(), worst));
    const double total = assemble_mass(mesh, free).sum();
    out.check(std::abs(total - 2.0) <= 1e-12,
              fmt("%s mass matrix total %.15f (expected 2, limit 1e-12)",
                  std::string(to_string(kind)).c_str(), total));
  }
  {
    // B = 0: the scheme must coincide with backward Euler for v_t + A v = F.
    Material mat = Material::experiment(0.5);
    mat.tau_eps = mat.tau_sigma;
    mat.mu_d = mat.mu_c;
    mat.lambda_d = mat.lambda_c;
    const auto problem = ManufacturedProblem::make(ProblemName::Ex61, mat);
    const Mesh mesh = Mesh::build(MeshKind::Triangular, 8);
    const DofMap dofs = DofMap::build(mesh);
    const int n_steps = 10;
    const double dt = 1.0 / n_steps, tol = 1e-12;
    RunOptions opts;
    opts.n_steps = n_steps;
    opts.cg_rel_tol = tol;
    opts.record_trajectory = true;
    const auto res = run(problem, mesh, dofs, opts);
    const System sys = System::build(mesh, dofs, mat, dt);
    const auto pre = LoadPrecomputation::build(mesh, dofs, problem);
    Vector v = res.trajectory.front();
    double worst = 0.0, scale = 0.0;
    for (int n = 1; n <= n_steps; ++n) {
      Vector rhs = sys.mass * v;
      const Vector f = assemble_load(pre, n * dt, 0.0);
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = rhs[i] / dt + f[i];
      v = cg_solve(sys.lhs, rhs, v, tol);
      for (std::size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::abs(v[i] - res.trajectory[n][i]));
        scale = std::max(scale, std::abs(v[i]));
      }
    }
    out.check(worst <= 1e-9 * scale,
              fmt("B = 0 reduces to backward Euler: max deviation %.3e (solver tol %.0e)", worst, tol));
  }
  return out;
}

const std::map<int, std::pair<std::string, std::function<Outcome()>>>& criteria() {
  static const std::map<int, std::pair<std::string, std::function<Outcome()>>> table{
      {1, {"spatial convergence, ex61, square mesh", criterion1}},
      {2, {"temporal convergence, ex61, square mesh, alpha=0.5", criterion2}},
      {3, {"ex62 spot checks, alpha=0.5", criterion3}},
      {4, {"SOE certification", criterion4}},
      {5, {"scheme equivalence", criterion5}},
      {6, {"complexity shape", criterion6}},
      {7, {"oracle and property checks", criterion7}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: fracvisco_acceptance [--criterion N]...\n";
      return 1;
    }
  }
  if (selected.empty()) {
    for (const auto& [k, _] : criteria()) selected.push_back(k);
  }
  int failures = 0;
  for (int k : selected) {
    const auto it = criteria().find(k);
    if (it == criteria().end()) {
      std::cerr << "unknown criterion " << k << "\n";
      return 1;
    }
    const auto start = Clock::now();
    Outcome out;
    try {
      out = it->second.second();
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " criterion " << k << ": "
              << it->second.first << fmt(" (%.1f s)", seconds_since(start)) << "\n";
    for (const auto& d : out.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
